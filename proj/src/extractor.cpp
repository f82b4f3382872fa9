#include "kolmo/extractor.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"

namespace kolmo {
namespace {

// ceil(log2 v) for v >= 1.
std::int64_t ceil_log2(std::int64_t v) {
  std::int64_t e = 0;
  while ((std::int64_t{1} << e) < v) ++e;
  return e;
}

}  // namespace

ExtractorParams derive_params(std::int64_t n, std::int64_t s_n, std::int64_t alpha,
                              std::int64_t const_c, std::int64_t m) {
  if (n < 1 || m < 1) throw Error("derive_params needs n >= 1 and m >= 1");
  const double log2n = std::log2(static_cast<double>(n));
  if (static_cast<double>(s_n) < static_cast<double>(alpha) + 7.0 * log2n +
                                     static_cast<double>(const_c)) {
    throw HypothesisViolationError("hypothesis fails: s_n < alpha + 7*log2(n) + C");
  }
  if (static_cast<double>(m) > static_cast<double>(s_n) - 7.0 * log2n) {
    throw HypothesisViolationError("hypothesis fails: m > s_n - 7*log2(n)");
  }
  ExtractorParams p;
  p.mode = ExtractorParams::Mode::paper;
  p.n = n;
  p.s_n = s_n;
  p.alpha = alpha;
  p.const_c = const_c;
  p.m = m;
  p.s = static_cast<std::int64_t>(
      std::floor(static_cast<double>(s_n) - 3.0 * log2n));
  if (p.s < 0) throw HypothesisViolationError("derived s is negative");
  p.S = pow2_z(static_cast<unsigned long>(p.s));
  p.t = alpha + const_c;
  const std::int64_t d_exp = alpha + const_c + 2 * ceil_log2(m);
  if (d_exp < 0) throw HypothesisViolationError("derived D exponent is negative");
  p.D = pow2_z(static_cast<unsigned long>(d_exp));
  return p;
}

ExtractorParams desk_params(std::int64_t n, std::int64_t m, std::int64_t s_n,
                            std::int64_t alpha, std::int64_t s, const mpz_class& S,
                            const mpz_class& D, std::int64_t t) {
  ExtractorParams p;
  p.mode = ExtractorParams::Mode::desk;
  p.n = n;
  p.m = m;
  p.s_n = s_n;
  p.alpha = alpha;
  p.s = s;
  p.S = S;
  p.D = D;
  p.t = t;
  return p;
}

BitString extract(const ColorTable& T, const BitString& x, const BitString& y) {
  if (x.length() != T.n || y.length() != T.n) {
    throw LengthMismatchError("extract: inputs must have length n = " +
                              std::to_string(T.n));
  }
  return BitString::from_index(T.at(x.index(), y.index()), T.m);
}

std::vector<BitString> padded_profile(const DescriptionSystem& sys, std::int64_t t1,
                                      int n) {
  if (t1 < 0 || t1 >= n) {
    throw Error("padded profile needs 0 <= t1 < n so that 2^(t1+1) <= 2^n");
  }
  std::vector<BitString> b1 = sys.profile_set(t1, BitString(), n);
  const std::uint64_t want = std::uint64_t{1} << (t1 + 1);
  std::set<BitString> have(b1.begin(), b1.end());
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n) && have.size() < want; ++v) {
    have.insert(BitString::from_index(v, n));
  }
  return {have.begin(), have.end()};
}

std::vector<std::uint64_t> bad_columns(const ColorTable& T, const DescriptionSystem& sys,
                                       std::int64_t t1, std::int64_t t,
                                       Execution exec) {
  if (t1 < 0 || t1 >= T.n) throw Error("bad_columns needs 0 <= t1 < n");
  const std::vector<BitString> b1 = sys.profile_set(t1, BitString(), T.n);
  std::vector<std::uint64_t> b1_rows;
  b1_rows.reserve(b1.size());
  for (const BitString& u : b1) b1_rows.push_back(u.index());

  const std::uint64_t side = T.N();
  // count >= 2 * |B1'| / 2^t with |B1'| = 2^(t1+1), compared exactly.
  const mpq_class threshold = pow2_q(static_cast<long>(t1 + 2 - t));

  std::vector<char> bad(side, 0);
  const std::int64_t a_threshold = T.m - t - 1;  // C(w|v) < m - t

#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(side); ++vi) {
    const std::uint64_t v = static_cast<std::uint64_t>(vi);
    const std::vector<BitString> a_v =
        sys.profile_set(a_threshold, BitString::from_index(v, T.n), T.m);
    if (a_v.empty()) continue;
    std::vector<char> in_a(T.M(), 0);
    for (const BitString& w : a_v) in_a[w.index()] = 1;
    std::uint64_t count = 0;
    for (std::uint64_t u : b1_rows) {
      if (in_a[T.at(u, v)]) ++count;
    }
    if (mpq_class(mpz_class(static_cast<unsigned long>(count))) >= threshold) {
      bad[v] = 1;
    }
  }

  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < side; ++v) {
    if (bad[v]) out.push_back(v);
  }
  return out;
}

AuditReport audit_extraction(const DescriptionSystem& sys, const ColorTable& T,
                             const BitString& x, const BitString& y,
                             const ExtractorParams& p) {
  AuditReport rep;
  rep.c_x = sys.complexity(x);
  rep.c_y = sys.complexity(y);
  const ComplexityValue cx_y = sys.complexity(x, y);
  const ComplexityValue cy_x = sys.complexity(y, x);
  if (rep.c_x.is_bot()) throw UndefinedComplexityError("undefined complexity: C(x)");
  if (rep.c_y.is_bot()) throw UndefinedComplexityError("undefined complexity: C(y)");
  if (cx_y.is_bot()) throw UndefinedComplexityError("undefined complexity: C(x|y)");
  if (cy_x.is_bot()) throw UndefinedComplexityError("undefined complexity: C(y|x)");

  rep.hypothesis_i = rep.c_x.value() >= p.s_n && rep.c_y.value() >= p.s_n;
  rep.hypothesis_ii = (rep.c_x.value() - cx_y.value()) <= p.alpha &&
                      (rep.c_y.value() - cy_x.value()) <= p.alpha;

  rep.z = extract(T, x, y);
  rep.cz_given_x = sys.complexity(rep.z, x);
  rep.cz_given_y = sys.complexity(rep.z, y);
  rep.target = p.m - p.t;
  rep.verdict1 = rep.cz_given_x >= rep.target;
  rep.verdict2 = rep.cz_given_y >= rep.target;

  // The proof encodes a rank on exactly C(side) + 2 - t bits; when that is
  // nonpositive the argument gives nothing for the corresponding verdict.
  if (p.t >= rep.c_y.value() + 2) {
    rep.notes.push_back("verdict1 out of proof range (t >= C(y) + 2)");
  }
  if (p.t >= rep.c_x.value() + 2) {
    rep.notes.push_back("verdict2 out of proof range (t >= C(x) + 2)");
  }
  return rep;
}

}  // namespace kolmo
