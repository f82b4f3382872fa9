#include "kolmo/params.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "kolmo/errors.hpp"

namespace kolmo {

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    try {
      const mpz_class num_z(num);
      const mpz_class den_z(den);
      if (den_z == 0) throw ParseError("zero denominator");
      mpq_class q(num_z, den_z);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational: " + text);
    }
  }
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return mpq_class(mpz_class(text));
    const std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad rational: " + text);
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    const bool neg = !head.empty() && head[0] == '-';
    mpz_class whole(head.empty() || head == "-" ? std::string("0") : head);
    mpz_class frac(tail.empty() ? std::string("0") : tail);
    mpq_class q(whole * scale + (neg ? -frac : frac), scale);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: " + text);
  }
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpq_class pow2_q(long e) {
  mpq_class q;
  if (e >= 0) {
    q = mpq_class(pow2_z(static_cast<unsigned long>(e)));
  } else {
    q = mpq_class(1, pow2_z(static_cast<unsigned long>(-e)));
  }
  q.canonicalize();
  return q;
}

mpz_class pow2_z(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rational_display(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return rational_string(q);
}

double to_double(const mpq_class& q) { return q.get_d(); }

mpz_class binom_sum(unsigned n, unsigned m) {
  if (m > n) throw Error("binom_sum requires m <= n");
  mpz_class total = 0, term;
  for (unsigned i = 0; i <= m; ++i) {
    mpz_bin_uiui(term.get_mpz_t(), n, i);
    total += term;
  }
  return total;
}

RainbowParams RainbowParams::make(int n, int m, std::uint64_t S, const mpq_class& D) {
  if (n < 0 || m < 0 || n > 62 || m > 62) throw SizeLimitError("n/m out of range");
  RainbowParams p;
  p.n = n;
  p.m = m;
  p.N = std::uint64_t{1} << n;
  p.M = std::uint64_t{1} << m;
  p.S = S;
  p.D = D;
  if (S == 0 || !std::has_single_bit(S)) throw Error("S must be a power of two");
  if (S > p.N) throw Error("S must not exceed N");
  if (D <= 0) throw Error("D must be positive");
  return p;
}

Feasibility rainbow_feasible(const RainbowParams& p) {
  const double D = to_double(p.D);
  const double rhs = 12.0 * D +
                     3.0 * (1.0 + std::log(D)) * static_cast<double>(p.M) *
                         static_cast<double>(p.m) * static_cast<double>(p.m) +
                     6.0 * D * std::log(static_cast<double>(p.N) / static_cast<double>(p.S));
  Feasibility f;
  f.rhs = rhs;
  f.margin = static_cast<double>(p.S) - rhs;
  f.feasible = f.margin >= 0.0;
  f.borderline = std::abs(f.margin) < 1e-9;
  return f;
}

}  // namespace kolmo
