#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kolmo {

/// A finite binary string with explicit length. The empty string is a
/// first-class value. Ordering is plain lexicographic on the bit text,
/// which coincides with numeric order for strings of equal length.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string_view bits);  // validates characters

  /// Big-endian binary of `value`, zero-padded to `len` bits.
  /// Requires value < 2^len.
  static BitString from_index(std::uint64_t value, int len);

  /// Plain binary of a natural number, no padding; bin(0) = "0".
  static BitString bin(std::uint64_t value);

  int length() const { return static_cast<int>(bits_.size()); }
  bool empty() const { return bits_.empty(); }
  bool bit(int i) const { return bits_[static_cast<std::size_t>(i)] == '1'; }

  /// Big-endian value of the string; the empty string has index 0.
  /// Requires length <= 63.
  std::uint64_t index() const;

  BitString prefix(int k) const;
  BitString suffix_from(int k) const;  // bits [k, length)

  const std::string& str() const { return bits_; }

  friend BitString operator+(const BitString& a, const BitString& b) {
    BitString r;
    r.bits_ = a.bits_ + b.bits_;
    return r;
  }

  auto operator<=>(const BitString&) const = default;

 private:
  std::string bits_;
};

/// All strings of the given length in lexicographic order.
std::vector<BitString> all_strings(int len);

/// Self-delimiting pair encoding: the binary of |x2| with every bit
/// doubled, the terminator "01", then x1 x2. Total length is
/// |x1| + |x2| + 2|bin(|x2|)| + 2.
BitString encode_pair(const BitString& x1, const BitString& x2);

/// Inverse of encode_pair. Throws MalformedEncodingError when the doubled
/// prefix has no "01" terminator or the remainder is too short.
std::pair<BitString, BitString> decode_pair(const BitString& s);

}  // namespace kolmo
