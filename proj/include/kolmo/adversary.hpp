#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/oracle.hpp"
#include "kolmo/table.hpp"

namespace kolmo {

/// Total or partial map from [N] (or [N]x[N], row-major in the first
/// argument) to m-bit strings; -1 marks an undefined cell.
struct FunctionGrid {
  int arity = 1;
  int n = 0;
  int m = 0;
  std::vector<std::int64_t> entries;

  std::uint64_t N() const { return std::uint64_t{1} << n; }
  std::uint64_t M() const { return std::uint64_t{1} << m; }
  std::uint64_t domain_size() const { return arity == 1 ? N() : N() * N(); }
  std::int64_t at1(std::uint64_t x) const { return entries[x]; }
  std::int64_t at2(std::uint64_t x, std::uint64_t y) const {
    return entries[x * N() + y];
  }
  bool total() const;

  static FunctionGrid undefined(int arity, int n, int m);
  static FunctionGrid read(std::istream& in);
  static FunctionGrid read_file(const std::string& path);
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;
};

/// Seeded grid; undefined_permille cells per thousand are left undefined.
FunctionGrid random_grid(int arity, int n, int m, std::uint64_t seed,
                         int undefined_permille = 0);

/// Exactly K = 2^(k+1) - 1 arity-1 functions in a fixed order; the i-th
/// plays the role of the machine run on the i-th advice string.
struct AdvisedFamily {
  int k = 0;
  std::vector<FunctionGrid> functions;

  std::uint64_t K() const { return (std::uint64_t{1} << (k + 1)) - 1; }
  int n() const { return functions.front().n; }
  int m() const { return functions.front().m; }

  static AdvisedFamily make(std::vector<FunctionGrid> functions);
};

struct PopularResult {
  BitString z;
  std::uint64_t count = 0;
};

/// Most popular output, ties to the lexicographically smallest.
PopularResult most_popular_output(const FunctionGrid& f);

struct OneSourceReport {
  BitString x;
  ComplexityValue c_x;
  BitString z;
  std::uint64_t count = 0;
  bool undefined_complexity = false;  // some candidate ranked as bot
};

/// Element of the most popular preimage maximizing C(x) in sys
/// (bot ranks below every natural and sets the flag; ties lexicographic).
OneSourceReport one_source_witness(const FunctionGrid& f, const DescriptionSystem& sys);

/// Defined outputs of the family on x, sorted, duplicates collapsed.
std::vector<BitString> range_of(const AdvisedFamily& fam, const BitString& x);

struct FrequentResult {
  std::vector<BitString> set;
  std::uint64_t count = 0;
  mpq_class threshold;  // 2^n / b(M, min(K, M))
};

/// First (in canonical set order) largest set attained as Range(x) by at
/// least 2^n / b(M,K) strings x; existence is a pigeonhole fact.
FrequentResult frequent_range(const AdvisedFamily& fam);

struct GreedyResult {
  std::vector<BitString> set;       // sorted
  std::vector<BitString> picked;    // in pick order
  std::uint64_t count = 0;          // |{x : Range(x) = set}|, exact
  int iterations = 0;               // completed iterations
  bool failed_early = false;
  mpq_class bound;                  // 2^n / (2^m + 1)^K
};

/// Iterative marking with threshold fraction 1/(2^m + 1); candidates are
/// scanned in lexicographic order of m-bit strings.
GreedyResult greedy_range_cover(const AdvisedFamily& fam);

struct TwoSourceReport {
  BitString x, y;
  BitString a;                  // most popular alpha-bit prefix value
  std::uint64_t preimage = 0;   // |g^-1(a)|
  ComplexityValue c_xy;         // ranking key C(xy)
  ComplexityValue c_x_given_y, c_y_given_x, c_f;
  double target_conditional = 0;  // n - alpha - 2 log2 n
  double target_output = 0;       // m - alpha + log2 n + 2 log2 alpha
  bool undefined_complexity = false;
};

TwoSourceReport two_source_witness(const FunctionGrid& f, int alpha,
                                   const DescriptionSystem& sys);

/// Exact-rational distribution over bitstrings (arity 1) or pairs (arity 2).
struct FiniteDistribution {
  int arity = 1;
  std::map<std::vector<BitString>, mpq_class> prob;

  void validate() const;  // positive masses summing to exactly 1
  static FiniteDistribution read(std::istream& in);
  static FiniteDistribution read_file(const std::string& path);
  void write(std::ostream& out) const;
};

struct MinEntropyResult {
  mpq_class p_max;
  double h_infinity = 0;  // -log2(p_max), display only
};

MinEntropyResult min_entropy(const FiniteDistribution& d);

struct AdversaryReport {
  FiniteDistribution joint;  // uniform over the constructed B
  BitString a, b;            // designated output is a + b
  mpq_class marginal_x_pmax, marginal_y_pmax, joint_pmax, prob_designated;
  bool ok_marginal_x = false;  // <= 2^-(n - alpha)
  bool ok_marginal_y = false;
  bool ok_joint = false;       // == 2^-(2n - alpha)
  bool ok_output = false;      // >= 2^-(m - alpha)
};

/// Min-entropy adversary: B of size exactly 2^(2n-alpha) inside the most
/// popular prefix class, loaded first with the most popular suffix class
/// so the output inequality holds constructively; the joint law is uniform
/// on B. All four inequalities are checked in exact rationals.
AdversaryReport min_entropy_adversary(const FunctionGrid& f, int alpha);

struct AmplificationTask {
  std::int64_t alpha = 0, beta = 0, s = 0, l = 0, a = 0;
};

struct AmplificationReport {
  BitString x, y, u, v, z;
  ComplexityValue c_x, c_y, c_x_given_y, c_y_given_x;
  ComplexityValue c_u, c_v, c_u_given_v, c_v_given_u, c_z, c_z_recomputed;
  std::optional<std::int64_t> dep_xy, dep_uv;  // absent when a part is bot
  bool input_complexity_ok = false;  // C(x), C(y) >= s
  bool input_dep_ok = false;         // dep(x,y) <= alpha
  bool clause1_ok = false;           // dep(u,v) <= beta
  bool clause2_ok = false;           // C(u), C(v) >= beta + a log2 n
  bool output_small_ok = false;      // C(z) <= m - alpha + log2 n + 2 log2 alpha
  bool extractor_promise_ok = false; // C(z) >= m - beta
  std::string first_failure;         // "none" when the whole chain holds
  double clause2_target = 0, output_small_target = 0, extractor_target = 0;
};

/// Composes z = T(f1(x,y), f2(x,y)), picks the witness pair for the
/// composition, and measures every clause of the dependency-reduction
/// chain in sys. Reporting only.
AmplificationReport amplification_harness(const FunctionGrid& f1,
                                          const FunctionGrid& f2,
                                          const ColorTable& T,
                                          const DescriptionSystem& sys,
                                          const AmplificationTask& task);

}  // namespace kolmo
