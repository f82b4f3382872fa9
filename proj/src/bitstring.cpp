#include "kolmo/bitstring.hpp"

#include <stdexcept>

#include "kolmo/errors.hpp"

namespace kolmo {

BitString::BitString(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw ParseError("bitstring contains a character other than 0/1");
    }
  }
}

BitString BitString::from_index(std::uint64_t value, int len) {
  if (len < 0 || len > 63) throw SizeLimitError("bitstring length out of range");
  if (len < 63 && value >= (std::uint64_t{1} << len)) {
    throw Error("index does not fit in the requested length");
  }
  BitString r;
  r.bits_.resize(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    r.bits_[static_cast<std::size_t>(i)] =
        (value >> (len - 1 - i)) & 1 ? '1' : '0';
  }
  return r;
}

BitString BitString::bin(std::uint64_t value) {
  if (value == 0) return BitString("0");
  std::string s;
  while (value > 0) {
    s.push_back((value & 1) ? '1' : '0');
    value >>= 1;
  }
  BitString r;
  r.bits_.assign(s.rbegin(), s.rend());
  return r;
}

std::uint64_t BitString::index() const {
  if (length() > 63) throw SizeLimitError("bitstring too long for an index");
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

BitString BitString::prefix(int k) const {
  BitString r;
  r.bits_ = bits_.substr(0, static_cast<std::size_t>(k));
  return r;
}

BitString BitString::suffix_from(int k) const {
  BitString r;
  r.bits_ = bits_.substr(static_cast<std::size_t>(k));
  return r;
}

std::vector<BitString> all_strings(int len) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << len);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    out.push_back(BitString::from_index(v, len));
  }
  return out;
}

BitString encode_pair(const BitString& x1, const BitString& x2) {
  const BitString len_bits = BitString::bin(static_cast<std::uint64_t>(x2.length()));
  std::string out;
  out.reserve(2 * len_bits.str().size() + 2 + x1.str().size() + x2.str().size());
  for (char c : len_bits.str()) {
    out.push_back(c);
    out.push_back(c);
  }
  out += "01";
  out += x1.str();
  out += x2.str();
  return BitString(out);
}

std::pair<BitString, BitString> decode_pair(const BitString& s) {
  const std::string& b = s.str();
  std::size_t pos = 0;
  std::string len_bits;
  bool terminated = false;
  while (pos + 1 < b.size()) {
    const char c0 = b[pos], c1 = b[pos + 1];
    pos += 2;
    if (c0 == '0' && c1 == '1') {
      terminated = true;
      break;
    }
    if (c0 != c1) throw MalformedEncodingError("doubled prefix contains a '10' pair");
    len_bits.push_back(c0);
  }
  if (!terminated) throw MalformedEncodingError("no \"01\" terminator in the doubled prefix");
  if (len_bits.empty()) throw MalformedEncodingError("empty length field before the terminator");
  std::uint64_t len2 = 0;
  if (len_bits.size() > 63) throw MalformedEncodingError("length field too wide");
  for (char c : len_bits) len2 = (len2 << 1) | static_cast<std::uint64_t>(c == '1');
  const std::size_t rest = b.size() - pos;
  if (rest < len2) throw MalformedEncodingError("remaining length shorter than the declared |x2|");
  const std::size_t len1 = rest - static_cast<std::size_t>(len2);
  return {BitString(std::string_view(b).substr(pos, len1)),
          BitString(std::string_view(b).substr(pos + len1))};
}

}  // namespace kolmo
