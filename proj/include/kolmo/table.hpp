#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/params.hpp"

namespace kolmo {

/// Total N-by-N color table, N = 2^n, colors in [0, M), M = 2^m.
/// Cells are stored row-major; (u, v) is row u, column v.
struct ColorTable {
  int n = 0;
  int m = 0;
  std::vector<std::uint32_t> cells;

  std::uint64_t N() const { return std::uint64_t{1} << n; }
  std::uint32_t M() const { return std::uint32_t{1} << m; }
  std::uint32_t at(std::uint64_t u, std::uint64_t v) const {
    return cells[u * N() + v];
  }
  void set(std::uint64_t u, std::uint64_t v, std::uint32_t c) {
    cells[u * N() + v] = c;
  }
  ColorTable transposed() const;

  static ColorTable zero(int n, int m);
  static ColorTable read(std::istream& in);
  static ColorTable read_file(const std::string& path);
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;
};

/// The family A_D of color sets A with ceil(M/D) <= |A| <= floor((M/D) m^2)
/// (and |A| <= M). Empty when the integer bounds cross.
struct ColorSetFamily {
  std::uint64_t M = 1;
  int m = 0;
  mpq_class D = 1;
  std::int64_t min_size = 1;
  std::int64_t max_size = 0;

  bool empty() const { return min_size > max_size; }
  static ColorSetFamily make(std::uint64_t M, int m, const mpq_class& D);
};

struct StripMax {
  std::uint64_t count = 0;
  bool vacuous = false;  // empty family: the maximum is over nothing
};

/// max over A in the family of |{u in b1_rows : T(u,v) in A}|; equals the
/// sum of the max_size largest color frequencies in the strip.
StripMax column_strip_max(const ColorTable& T, std::span<const std::uint64_t> b1_rows,
                          std::uint64_t v, const ColorSetFamily& fam);

enum class VerifyMode { decomposed, exhaustive };
enum class Execution { serial, parallel };
enum class Orientation { columns, rows };

enum class VacuousReason { none, empty_family, bound_cap };

struct VerifyReport {
  bool balanced = false;
  std::vector<std::uint64_t> worst_b1;  // rows for columns orientation, columns for rows
  std::vector<std::uint64_t> worst_b2;
  Orientation worst_orientation = Orientation::columns;
  std::uint64_t worst_count = 0;
  double bound = 0.0;                     // 2 m^2 S^2 / D
  std::uint64_t rectangles_checked = 0;
  VacuousReason vacuous = VacuousReason::none;
};

/// Rainbow-balance check at rectangle side S. Decomposed mode factorizes the tuple
/// maximization per column (exact, since tuple coordinates act on disjoint
/// columns); exhaustive mode quantifies over tuples directly and is the
/// oracle the decomposition is tested against. The report is deterministic
/// for either execution.
VerifyReport verify_rainbow(const ColorTable& T, std::uint64_t S, const mpq_class& D,
                            VerifyMode mode, Execution exec = Execution::parallel);

ColorTable random_table(int n, int m, std::uint64_t seed);

/// First table in canonical order (row-major cells as a base-M numeral,
/// ascending) that verifies balanced. Throws NotFoundError when the whole
/// space fails.
ColorTable smallest_rainbow(const RainbowParams& p);

struct MonteCarloResult {
  ColorTable table;
  int tries = 0;
};

MonteCarloResult monte_carlo_rainbow(const RainbowParams& p, int max_tries,
                                     std::uint64_t seed);

/// Desk-scale guards; KOLMO_MAX_N overrides the table-side cap.
struct DeskLimits {
  std::uint64_t max_table_side = 256;
  std::int64_t max_b1_candidates = 5'000'000;
};
const DeskLimits& desk_limits();

}  // namespace kolmo
