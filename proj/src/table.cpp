#include "kolmo/table.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kolmo/errors.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {

const DeskLimits& desk_limits() {
  static const DeskLimits limits = [] {
    DeskLimits l;
    if (const char* env = std::getenv("KOLMO_MAX_N")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v >= 1) l.max_table_side = v;
    }
    return l;
  }();
  return limits;
}

ColorTable ColorTable::transposed() const {
  ColorTable t = zero(n, m);
  const std::uint64_t side = N();
  for (std::uint64_t u = 0; u < side; ++u) {
    for (std::uint64_t v = 0; v < side; ++v) t.set(v, u, at(u, v));
  }
  return t;
}

ColorTable ColorTable::zero(int n, int m) {
  if (n < 0 || m < 0 || n > 30 || m > 30) throw SizeLimitError("table n/m out of range");
  ColorTable t;
  t.n = n;
  t.m = m;
  t.cells.assign((std::uint64_t{1} << n) * (std::uint64_t{1} << n), 0);
  return t;
}

ColorTable ColorTable::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty table file");
  int n = -1, m = -1;
  {
    std::istringstream hs(header);
    std::string tag, fn, fm;
    hs >> tag >> fn >> fm;
    if (tag != "table" || fn.rfind("n=", 0) != 0 || fm.rfind("m=", 0) != 0) {
      throw ParseError("table header must be `table n=<n> m=<m>`");
    }
    try {
      n = std::stoi(fn.substr(2));
      m = std::stoi(fm.substr(2));
    } catch (const std::exception&) {
      throw ParseError("bad table header numbers");
    }
  }
  ColorTable t = zero(n, m);
  const std::uint64_t side = t.N();
  for (std::uint64_t u = 0; u < side; ++u) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("table: missing row " + std::to_string(u));
    std::istringstream ls(line);
    for (std::uint64_t v = 0; v < side; ++v) {
      long long c;
      if (!(ls >> c)) throw ParseError("table: short row " + std::to_string(u));
      if (c < 0 || static_cast<std::uint64_t>(c) >= t.M()) {
        throw ParseError("table: color out of range in row " + std::to_string(u));
      }
      t.set(u, v, static_cast<std::uint32_t>(c));
    }
    long long extra;
    if (ls >> extra) throw ParseError("table: long row " + std::to_string(u));
  }
  return t;
}

ColorTable ColorTable::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file: " + path);
  return read(in);
}

void ColorTable::write(std::ostream& out) const {
  out << "table n=" << n << " m=" << m << "\n";
  const std::uint64_t side = N();
  for (std::uint64_t u = 0; u < side; ++u) {
    for (std::uint64_t v = 0; v < side; ++v) {
      if (v) out << ' ';
      out << at(u, v);
    }
    out << "\n";
  }
}

void ColorTable::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write table file: " + path);
  write(out);
}

ColorSetFamily ColorSetFamily::make(std::uint64_t M, int m, const mpq_class& D) {
  if (D <= 0) throw Error("D must be positive");
  ColorSetFamily f;
  f.M = M;
  f.m = m;
  f.D = D;
  const mpz_class big_m(static_cast<unsigned long>(M));
  const mpq_class ratio = mpq_class(big_m) / D;
  mpz_class lo = ceil_q(ratio);
  if (lo < 1) lo = 1;  // color sets are nonempty
  mpz_class up = floor_q(ratio * (m * m));
  if (up > big_m) up = big_m;
  if (lo > big_m + 1) lo = big_m + 1;
  f.min_size = static_cast<std::int64_t>(lo.get_si());
  f.max_size = static_cast<std::int64_t>(up.get_si());
  return f;
}

StripMax column_strip_max(const ColorTable& T, std::span<const std::uint64_t> b1_rows,
                          std::uint64_t v, const ColorSetFamily& fam) {
  StripMax r;
  if (fam.empty()) {
    r.vacuous = true;
    return r;
  }
  // Frequencies of the few colors actually present in the strip.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> freq;
  freq.reserve(b1_rows.size());
  for (std::uint64_t u : b1_rows) {
    const std::uint32_t c = T.at(u, v);
    bool found = false;
    for (auto& [color, count] : freq) {
      if (color == c) {
        ++count;
        found = true;
        break;
      }
    }
    if (!found) freq.emplace_back(c, 1);
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(freq.size());
  for (const auto& [color, count] : freq) counts.push_back(count);
  std::sort(counts.rbegin(), counts.rend());
  const std::size_t take =
      std::min<std::size_t>(counts.size(), static_cast<std::size_t>(fam.max_size));
  for (std::size_t i = 0; i < take; ++i) r.count += counts[i];
  return r;
}

namespace {

// C(n, k), saturating at cap + 1. Each partial product r*(n-k+i)/i is an
// exact integer (it equals C(n-k+i, i)).
std::uint64_t binom64(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

mpq_class rect_bound_q(int m, std::uint64_t a, std::uint64_t b, const mpq_class& D) {
  mpz_class cells = mpz_class(static_cast<unsigned long>(a));
  cells *= mpz_class(static_cast<unsigned long>(b));
  mpq_class q(2 * m * m);
  q *= mpq_class(cells);
  q /= D;
  return q;
}

// Lexicographic S-combinations of [0, N).
void first_combination(std::vector<std::uint64_t>& c, std::uint64_t s) {
  c.resize(s);
  for (std::uint64_t i = 0; i < s; ++i) c[i] = i;
}

bool next_combination(std::vector<std::uint64_t>& c, std::uint64_t n) {
  const std::size_t s = c.size();
  if (s == 0) return false;
  std::size_t i = s;
  while (i > 0) {
    --i;
    if (c[i] + (s - i) < n) {
      ++c[i];
      for (std::size_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Unrank the rank-th lexicographic S-combination of [0, N).
std::vector<std::uint64_t> unrank_combination(std::uint64_t n, std::uint64_t s,
                                              std::uint64_t rank,
                                              std::uint64_t cap) {
  std::vector<std::uint64_t> c(s);
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < s; ++i) {
    while (true) {
      const std::uint64_t block = binom64(n - 1 - x, s - 1 - i, cap);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    c[i] = x++;
  }
  return c;
}

struct Candidate {
  std::uint64_t count = 0;
  Orientation orientation = Orientation::columns;
  std::vector<std::uint64_t> b1, b2;
  bool valid = false;
};

// Reused buffers for the rectangle scan; one instance per thread.
struct ScanScratch {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> freq;
  std::vector<std::uint64_t> counts;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> colmax;  // (value, column)
};

std::uint64_t strip_top_sum(const ColorTable& T, const std::vector<std::uint64_t>& b1,
                            std::uint64_t v, std::int64_t max_size, ScanScratch& s) {
  s.freq.clear();
  for (std::uint64_t u : b1) {
    const std::uint32_t c = T.at(u, v);
    bool found = false;
    for (auto& [color, count] : s.freq) {
      if (color == c) {
        ++count;
        found = true;
        break;
      }
    }
    if (!found) s.freq.emplace_back(c, 1);
  }
  s.counts.clear();
  for (const auto& [color, count] : s.freq) s.counts.push_back(count);
  std::sort(s.counts.rbegin(), s.counts.rend());
  const std::size_t take =
      std::min<std::size_t>(s.counts.size(), static_cast<std::size_t>(max_size));
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < take; ++i) total += s.counts[i];
  return total;
}

// Total order: larger count first, then columns before rows, then
// lexicographic b1, then b2. Makes the scan's argmax unique, so the
// report does not depend on how work was partitioned.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.count != b.count) return a.count > b.count;
  if (a.orientation != b.orientation) return a.orientation == Orientation::columns;
  if (a.b1 != b.b1) return a.b1 < b.b1;
  return a.b2 < b.b2;
}

// Worst rectangle with row set `b1` under the per-column decomposition:
// per column take the top-max_size frequency sum, then the top-S columns.
Candidate decomposed_candidate(const ColorTable& T, Orientation orient,
                               const std::vector<std::uint64_t>& b1,
                               std::uint64_t S, const ColorSetFamily& fam,
                               ScanScratch& scratch) {
  const std::uint64_t side = T.N();
  scratch.colmax.resize(side);
  for (std::uint64_t v = 0; v < side; ++v) {
    scratch.colmax[v] = {strip_top_sum(T, b1, v, fam.max_size, scratch), v};
  }
  std::partial_sort(scratch.colmax.begin(), scratch.colmax.begin() + S,
                    scratch.colmax.end(), [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  Candidate cand;
  cand.valid = true;
  cand.orientation = orient;
  cand.b1 = b1;
  cand.b2.resize(S);
  for (std::uint64_t j = 0; j < S; ++j) {
    cand.count += scratch.colmax[j].first;
    cand.b2[j] = scratch.colmax[j].second;
  }
  std::sort(cand.b2.begin(), cand.b2.end());
  return cand;
}

Candidate scan_decomposed_serial(const ColorTable& T, Orientation orient,
                                 std::uint64_t S, const ColorSetFamily& fam,
                                 std::uint64_t* rectangles) {
  const std::uint64_t side = T.N();
  Candidate best;
  ScanScratch scratch;
  std::vector<std::uint64_t> b1;
  first_combination(b1, S);
  do {
    Candidate cand = decomposed_candidate(T, orient, b1, S, fam, scratch);
    ++*rectangles;
    if (better(cand, best)) best = std::move(cand);
  } while (next_combination(b1, side));
  return best;
}

Candidate scan_decomposed_parallel(const ColorTable& T, Orientation orient,
                                   std::uint64_t S, const ColorSetFamily& fam,
                                   std::uint64_t* rectangles) {
  const std::uint64_t side = T.N();
  const std::uint64_t total =
      binom64(side, S, static_cast<std::uint64_t>(desk_limits().max_b1_candidates));
  Candidate best;
#pragma omp parallel
  {
    Candidate local;
    ScanScratch scratch;
    std::vector<std::uint64_t> b1;
    bool have_b1 = false;
    std::uint64_t next_rank = 0;
#pragma omp for schedule(static)
    for (std::int64_t rank = 0; rank < static_cast<std::int64_t>(total); ++rank) {
      // Ranks inside a static chunk are consecutive; unrank once, then step.
      if (!have_b1 || static_cast<std::uint64_t>(rank) != next_rank) {
        b1 = unrank_combination(side, S, static_cast<std::uint64_t>(rank), UINT64_MAX);
        have_b1 = true;
      }
      next_rank = static_cast<std::uint64_t>(rank) + 1;
      Candidate cand = decomposed_candidate(T, orient, b1, S, fam, scratch);
      if (better(cand, local)) local = std::move(cand);
      next_combination(b1, side);
    }
#pragma omp critical
    {
      if (better(local, best)) best = std::move(local);
    }
  }
  *rectangles += total;
  return best;
}

// Enumerate the family as color bitmasks in ascending mask order.
std::vector<std::uint64_t> family_masks(const ColorSetFamily& fam) {
  if (fam.M > 16) throw SizeLimitError("exhaustive family enumeration needs M <= 16");
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fam.M); ++mask) {
    const int pc = std::popcount(mask);
    if (pc >= fam.min_size && pc <= fam.max_size) masks.push_back(mask);
  }
  return masks;
}

Candidate scan_exhaustive(const ColorTable& T, Orientation orient, std::uint64_t S,
                          const ColorSetFamily& fam, std::uint64_t* rectangles) {
  const std::uint64_t side = T.N();
  const std::vector<std::uint64_t> masks = family_masks(fam);
  double tuples = 1;
  for (std::uint64_t j = 0; j < S; ++j) tuples *= static_cast<double>(masks.size());
  if (tuples > 2e7) throw SizeLimitError("exhaustive tuple space too large");

  Candidate best;
  std::vector<std::uint64_t> b1, b2;
  first_combination(b1, S);
  do {
    first_combination(b2, S);
    do {
      // max over (A_1, ..., A_S) of the properly-colored count in b1 x b2
      std::uint64_t tuple_best = 0;
      std::vector<std::size_t> pick(S, 0);
      while (true) {
        std::uint64_t count = 0;
        for (std::uint64_t j = 0; j < S; ++j) {
          const std::uint64_t mask = masks[pick[j]];
          for (std::uint64_t u : b1) {
            if ((mask >> T.at(u, b2[j])) & 1) ++count;
          }
        }
        tuple_best = std::max(tuple_best, count);
        std::uint64_t j = 0;
        while (j < S && ++pick[j] == masks.size()) pick[j++] = 0;
        if (j == S) break;
      }
      Candidate cand;
      cand.valid = true;
      cand.orientation = orient;
      cand.b1 = b1;
      cand.b2 = b2;
      cand.count = tuple_best;
      ++*rectangles;
      if (better(cand, best)) best = cand;
    } while (next_combination(b2, side));
  } while (next_combination(b1, side));
  return best;
}

}  // namespace

VerifyReport verify_rainbow(const ColorTable& T, std::uint64_t S, const mpq_class& D,
                            VerifyMode mode, Execution exec) {
  const std::uint64_t side = T.N();
  if (S == 0 || !std::has_single_bit(S)) throw Error("S must be a power of two");
  if (S > side) throw Error("S must not exceed N");
  if (D <= 0) throw Error("D must be positive");

  const ColorSetFamily fam = ColorSetFamily::make(T.M(), T.m, D);
  VerifyReport rep;
  rep.bound = to_double(rect_bound_q(T.m, S, S, D));

  if (fam.empty()) {
    rep.balanced = true;
    rep.vacuous = VacuousReason::empty_family;
    return rep;
  }
  // bound >= |B1| * |B2| for every rectangle: nothing can exceed it.
  if (mpq_class(2 * T.m * T.m) >= D) {
    rep.balanced = true;
    rep.vacuous = VacuousReason::bound_cap;
    return rep;
  }

  const mpz_class max_allowed = floor_q(rect_bound_q(T.m, S, S, D));

  Candidate best;
  std::uint64_t rectangles = 0;
  const ColorTable Tt = T.transposed();

  if (mode == VerifyMode::decomposed) {
    if (side > desk_limits().max_table_side) {
      throw SizeLimitError("decomposed verification exceeds the table-side limit");
    }
    const std::uint64_t cands = binom64(
        side, S, static_cast<std::uint64_t>(desk_limits().max_b1_candidates));
    if (cands > static_cast<std::uint64_t>(desk_limits().max_b1_candidates)) {
      throw SizeLimitError("too many rectangle candidates at this (N, S)");
    }
    for (Orientation orient : {Orientation::columns, Orientation::rows}) {
      const ColorTable& grid = orient == Orientation::columns ? T : Tt;
      Candidate c = exec == Execution::parallel
                        ? scan_decomposed_parallel(grid, orient, S, fam, &rectangles)
                        : scan_decomposed_serial(grid, orient, S, fam, &rectangles);
      if (better(c, best)) best = std::move(c);
    }
  } else {
    if (side > 8 || S > 2) throw SizeLimitError("exhaustive mode is limited to N <= 8, S <= 2");
    for (Orientation orient : {Orientation::columns, Orientation::rows}) {
      const ColorTable& grid = orient == Orientation::columns ? T : Tt;
      Candidate c = scan_exhaustive(grid, orient, S, fam, &rectangles);
      if (better(c, best)) best = std::move(c);
    }
  }

  rep.worst_count = best.count;
  rep.worst_b1 = best.b1;
  rep.worst_b2 = best.b2;
  rep.worst_orientation = best.orientation;
  rep.rectangles_checked = rectangles;
  rep.balanced = mpz_class(static_cast<unsigned long>(best.count)) <= max_allowed;
  return rep;
}

ColorTable random_table(int n, int m, std::uint64_t seed) {
  if (n < 0 || m < 0 || n > 30 || m > 20) throw SizeLimitError("random table n/m out of range");
  if ((std::uint64_t{1} << n) > desk_limits().max_table_side) {
    throw SizeLimitError("random table exceeds the table-side limit");
  }
  ColorTable t = ColorTable::zero(n, m);
  Rng rng(seed);
  for (std::uint32_t& cell : t.cells) {
    cell = static_cast<std::uint32_t>(rng.below(t.M()));
  }
  return t;
}

namespace {

// Incremental balance check for a table whose rows [0, r] are assigned:
// scans exactly the rectangles that became fully determined when row r
// was filled. Sound for pruning (a violated rectangle stays violated).
bool prefix_ok(const ColorTable& T, std::uint64_t r, std::uint64_t S,
               const ColorSetFamily& fam, const mpz_class& max_allowed) {
  const std::uint64_t side = T.N();
  if (r + 1 < S) return true;

  // Columns orientation: row sets B1 containing r.
  {
    std::vector<std::uint64_t> sub;
    if (S == 1) {
      sub.clear();
    } else {
      first_combination(sub, S - 1);
    }
    while (true) {
      std::vector<std::uint64_t> b1(sub);
      b1.push_back(r);
      std::vector<std::uint64_t> colmax(side);
      for (std::uint64_t v = 0; v < side; ++v) {
        colmax[v] = column_strip_max(T, b1, v, fam).count;
      }
      std::sort(colmax.rbegin(), colmax.rend());
      std::uint64_t count = 0;
      for (std::uint64_t j = 0; j < S; ++j) count += colmax[j];
      if (mpz_class(static_cast<unsigned long>(count)) > max_allowed) return false;
      if (S == 1 || !next_combination(sub, r)) break;
    }
  }

  // Rows orientation: per-row sets over row sets B2 containing r; the
  // column set B1 ranges over everything, so enumerate it directly.
  {
    std::vector<std::uint64_t> b1cols;
    first_combination(b1cols, S);
    do {
      // top-max_size frequency sum within row v restricted to b1cols
      std::vector<std::uint64_t> rowmax(r + 1, 0);
      for (std::uint64_t v = 0; v <= r; ++v) {
        std::vector<std::pair<std::uint32_t, std::uint64_t>> freq;
        for (std::uint64_t c : b1cols) {
          const std::uint32_t color = T.at(v, c);
          bool found = false;
          for (auto& [col, cnt] : freq) {
            if (col == color) {
              ++cnt;
              found = true;
              break;
            }
          }
          if (!found) freq.emplace_back(color, 1);
        }
        std::vector<std::uint64_t> counts;
        for (const auto& [col, cnt] : freq) counts.push_back(cnt);
        std::sort(counts.rbegin(), counts.rend());
        const std::size_t take = std::min<std::size_t>(
            counts.size(), static_cast<std::size_t>(fam.max_size));
        for (std::size_t i = 0; i < take; ++i) rowmax[v] += counts[i];
      }
      std::uint64_t count = rowmax[r];
      std::vector<std::uint64_t> rest(rowmax.begin(), rowmax.begin() + r);
      std::sort(rest.rbegin(), rest.rend());
      for (std::uint64_t j = 0; j + 1 < S; ++j) count += rest[j];
      if (mpz_class(static_cast<unsigned long>(count)) > max_allowed) return false;
    } while (next_combination(b1cols, side));
  }
  return true;
}

bool smallest_dfs(ColorTable& T, std::uint64_t row, std::uint64_t S,
                  const ColorSetFamily& fam, const mpz_class& max_allowed) {
  const std::uint64_t side = T.N();
  if (row == side) return true;
  const std::uint64_t M = T.M();
  std::uint64_t span = 1;
  for (std::uint64_t i = 0; i < side; ++i) span *= M;
  for (std::uint64_t val = 0; val < span; ++val) {
    std::uint64_t rest = val;
    for (std::uint64_t v = side; v-- > 0;) {
      T.set(row, v, static_cast<std::uint32_t>(rest % M));
      rest /= M;
    }
    if (!prefix_ok(T, row, S, fam, max_allowed)) continue;
    if (smallest_dfs(T, row + 1, S, fam, max_allowed)) return true;
  }
  for (std::uint64_t v = 0; v < side; ++v) T.set(row, v, 0);
  return false;
}

}  // namespace

ColorTable smallest_rainbow(const RainbowParams& p) {
  // Cost proxy for the canonical enumeration: M^(N^2) <= 2^32.
  if (static_cast<double>(p.m) * static_cast<double>(p.N) * static_cast<double>(p.N) >
      32.0) {
    throw SizeLimitError("smallest-table search exceeds the enumeration limit");
  }
  const ColorSetFamily fam = ColorSetFamily::make(p.M, p.m, p.D);
  ColorTable T = ColorTable::zero(p.n, p.m);
  if (fam.empty() || mpq_class(2 * p.m * p.m) >= p.D) {
    return T;  // every table is balanced; the all-zero one is first
  }
  const mpz_class max_allowed = floor_q(rect_bound_q(p.m, p.S, p.S, p.D));
  if (!smallest_dfs(T, 0, p.S, fam, max_allowed)) {
    throw NotFoundError("no table of this size is rainbow balanced");
  }
  const VerifyReport check = verify_rainbow(T, p.S, p.D, VerifyMode::decomposed,
                                            Execution::serial);
  if (!check.balanced) throw Error("internal: DFS result fails verification");
  return T;
}

MonteCarloResult monte_carlo_rainbow(const RainbowParams& p, int max_tries,
                                     std::uint64_t seed) {
  if (max_tries < 1) throw Error("max_tries must be positive");
  if (p.N > desk_limits().max_table_side) {
    throw SizeLimitError("monte carlo table exceeds desk limits");
  }
  Rng rng(seed);
  ColorTable t = ColorTable::zero(p.n, p.m);
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    for (std::uint32_t& cell : t.cells) {
      cell = static_cast<std::uint32_t>(rng.below(t.M()));
    }
    const VerifyReport rep =
        verify_rainbow(t, p.S, p.D, VerifyMode::decomposed, Execution::parallel);
    if (rep.balanced) return {std::move(t), attempt};
  }
  throw ExhaustedTriesError("no balanced table found in " +
                            std::to_string(max_tries) + " tries");
}

}  // namespace kolmo
