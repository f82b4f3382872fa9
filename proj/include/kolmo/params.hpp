#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "kolmo/exact.hpp"

namespace kolmo {

/// b(n,m) = C(n,0) + C(n,1) + ... + C(n,m). Rejects m > n.
mpz_class binom_sum(unsigned n, unsigned m);

/// Parameter bundle for rainbow-balanced tables: N = 2^n rows/columns,
/// M = 2^m colors, S the rectangle side (a power of two <= N), D the
/// color-set divisor (positive, kept exact; typically a power of two).
struct RainbowParams {
  int n = 0;
  int m = 0;
  std::uint64_t N = 1;
  std::uint64_t M = 1;
  std::uint64_t S = 1;
  mpq_class D = 1;

  static RainbowParams make(int n, int m, std::uint64_t S, const mpq_class& D);
};

struct Feasibility {
  bool feasible = false;
  double margin = 0.0;
  double rhs = 0.0;
  bool borderline = false;  // |margin| < 1e-9: the bound is sufficient, not sharp
};

/// Union-bound sufficient condition for a random table to be (S,D)-rainbow
/// balanced with probability above 1/2: S >= 12D + 3(1+ln D)Mm^2 + 6D ln(N/S).
Feasibility rainbow_feasible(const RainbowParams& p);

}  // namespace kolmo
