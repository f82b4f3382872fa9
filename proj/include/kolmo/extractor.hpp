#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/oracle.hpp"
#include "kolmo/table.hpp"

namespace kolmo {

/// Parameter bundle for the two-source extractor. Paper mode derives
/// s = floor(s_n - 3 log2 n), S = 2^s, t = alpha + C and
/// D = 2^(alpha + C + 2 ceil(log2 m)), requiring s_n >= alpha + 7 log2 n + C
/// and m <= s_n - 7 log2 n; desk mode records caller-supplied s, S, D, t
/// verbatim.
struct ExtractorParams {
  enum class Mode { paper, desk };
  Mode mode = Mode::desk;
  std::int64_t n = 0;
  std::int64_t s_n = 0;    // source complexity floor s(n)
  std::int64_t alpha = 0;  // dependency bound
  std::int64_t const_c = 0;
  std::int64_t m = 0;      // output length
  std::int64_t s = 0;
  mpz_class S = 1;
  mpz_class D = 1;
  std::int64_t t = 0;
};

/// Throws HypothesisViolationError naming the failing inequality.
ExtractorParams derive_params(std::int64_t n, std::int64_t s_n, std::int64_t alpha,
                              std::int64_t const_c, std::int64_t m);

ExtractorParams desk_params(std::int64_t n, std::int64_t m, std::int64_t s_n,
                            std::int64_t alpha, std::int64_t s, const mpz_class& S,
                            const mpz_class& D, std::int64_t t);

/// E(x,y) = T(x,y) as an m-bit string (big-endian color index).
BitString extract(const ColorTable& T, const BitString& x, const BitString& y);

/// Profile set of length-n strings at threshold t1, padded to size 2^(t1+1)
/// with the lexicographically smallest absent strings. Requires t1 < n.
std::vector<BitString> padded_profile(const DescriptionSystem& sys, std::int64_t t1,
                                      int n);

/// Columns v with at least 2 * 2^(t1+1) / 2^t members of
/// B1 = {u : C(u) <= t1} carrying a color in A_v = {w : C(w|v) < m - t}.
/// Sorted ascending. May run the per-column scans in parallel.
std::vector<std::uint64_t> bad_columns(const ColorTable& T, const DescriptionSystem& sys,
                                       std::int64_t t1, std::int64_t t,
                                       Execution exec = Execution::parallel);

struct AuditReport {
  bool hypothesis_i = false;   // C(x) >= s_n and C(y) >= s_n
  bool hypothesis_ii = false;  // both dependency differences <= alpha
  BitString z;
  ComplexityValue c_x, c_y;
  ComplexityValue cz_given_x, cz_given_y;
  std::int64_t target = 0;  // m - t
  bool verdict1 = false;    // C(z|x) >= m - t
  bool verdict2 = false;    // C(z|y) >= m - t
  std::vector<std::string> notes;
};

/// Measures the extraction guarantee's premises (complexity floor,
/// dependency bound) and conclusions (C(z|x), C(z|y) against m - t) in a
/// finite system. Reports only; never asserts.
AuditReport audit_extraction(const DescriptionSystem& sys, const ColorTable& T,
                             const BitString& x, const BitString& y,
                             const ExtractorParams& p);

}  // namespace kolmo
