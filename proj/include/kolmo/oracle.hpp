#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"

namespace kolmo {

/// Complexity of a string in a finite description system: a natural
/// number, or bot when no description exists. bot compares greater than
/// every natural.
class ComplexityValue {
 public:
  static ComplexityValue bot() { return ComplexityValue(); }
  static ComplexityValue of(std::int64_t v) {
    ComplexityValue c;
    c.v_ = v;
    return c;
  }

  bool is_bot() const { return v_ < 0; }
  std::int64_t value() const;  // throws UndefinedComplexityError on bot

  /// bot-aware comparison key: bot maps above every natural.
  friend bool operator==(const ComplexityValue& a, const ComplexityValue& b) {
    return a.key() == b.key();
  }
  friend auto operator<=>(const ComplexityValue& a, const ComplexityValue& b) {
    return a.key() <=> b.key();
  }
  friend bool operator>=(const ComplexityValue& a, std::int64_t b) {
    return a.is_bot() || a.v_ >= b;
  }

  std::string str() const { return is_bot() ? "bot" : std::to_string(v_); }

 private:
  std::int64_t key() const { return is_bot() ? INT64_MAX : v_; }
  std::int64_t v_ = -1;
};

struct SystemEntry {
  BitString program;
  BitString condition;
  BitString output;
};

/// A finite, exactly computable stand-in for a two-tape machine:
/// the set of (program, condition, output) triples IS the machine graph.
/// Unconditional complexity is the empty-condition slice.
class DescriptionSystem {
 public:
  DescriptionSystem() = default;

  /// Parse the line format `<program> | <condition> -> <output>` with `.`
  /// for the empty string and `#` comments. Throws ParseError (with a line
  /// number) and DuplicateKeyError.
  static DescriptionSystem load(std::istream& in, std::string name = "sys");
  static DescriptionSystem load_file(const std::string& path);

  /// Build from explicit entries; rejects duplicate (program, condition).
  static DescriptionSystem from_entries(std::vector<SystemEntry> entries,
                                        std::string name = "sys");

  const std::string& name() const { return name_; }
  const std::vector<SystemEntry>& entries() const { return entries_; }

  /// min |p| over entries (p, cond, x); bot when there is none.
  ComplexityValue complexity(const BitString& x, const BitString& cond = BitString()) const;

  /// { u of length len : C(u | cond) <= t }, sorted. Empty for t < 0.
  std::vector<BitString> profile_set(std::int64_t t, const BitString& cond, int len) const;

  void save(std::ostream& out) const;

 private:
  std::string name_;
  std::vector<SystemEntry> entries_;  // sorted by (condition, program)
  // condition -> output -> shortest program length
  std::map<BitString, std::map<BitString, std::int64_t>> shortest_;
};

struct DependencyReport {
  ComplexityValue c_x, c_y, c_x_given_y, c_y_given_x;
  std::int64_t dep = 0;  // max of the two directed differences
};

/// max of C(x) - C(x|y) and C(y) - C(y|x); all four complexities must be
/// finite, otherwise UndefinedComplexityError names the first missing one.
DependencyReport dependency(const DescriptionSystem& sys, const BitString& x,
                            const BitString& y);

struct SoiSlacks {
  // Satisfied-margin per inequality: >= 0 iff it holds with the O(1)
  // terms dropped. log2 of values <= 1 evaluates to 0.
  double a = 0, b = 0, c = 0;
};

SoiSlacks soi_slack(const DescriptionSystem& sys, const BitString& x,
                    const BitString& y);

/// Seeded system giving every string of length <= max_len one unconditional
/// program of pseudo-random length (programs distinct per length).
DescriptionSystem random_system(int max_len, std::uint64_t seed);

/// Echo machine graph: C(x | c) = |x| via the program x itself, and
/// C(c | c) = 0 via the empty program. Conditions range over all strings
/// of length <= cond_max_len (plus the empty condition), outputs over all
/// strings of length <= max_len.
DescriptionSystem literal_system(int max_len, int cond_max_len);

}  // namespace kolmo
