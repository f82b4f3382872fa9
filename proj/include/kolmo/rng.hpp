#pragma once

#include <cstdint>
#include <random>

namespace kolmo {

// Seeded generator with a platform-independent integer draw.
// std::mt19937_64 output is pinned by the standard; the usual
// uniform_int_distribution is not, so we do our own rejection step.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, bound), unbiased. bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kolmo
