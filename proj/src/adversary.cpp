#include "kolmo/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/extractor.hpp"
#include "kolmo/params.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {
namespace {

double safe_log2(double v) { return v <= 1.0 ? 0.0 : std::log2(v); }

std::string grid_token(const FunctionGrid& g, std::int64_t e) {
  if (e < 0) return "?";
  if (g.m == 0) return ".";
  return BitString::from_index(static_cast<std::uint64_t>(e), g.m).str();
}

void check_grid_shape(int arity, int n, int m) {
  if (arity != 1 && arity != 2) throw ParseError("grid arity must be 1 or 2");
  if (n < 0 || m < 0 || m > 20) throw SizeLimitError("grid n/m out of range");
  if (arity == 1 && n > 20) throw SizeLimitError("arity-1 grid n out of range");
  if (arity == 2 && n > 10) throw SizeLimitError("arity-2 grid n out of range");
}

}  // namespace

bool FunctionGrid::total() const {
  for (std::int64_t e : entries) {
    if (e < 0) return false;
  }
  return true;
}

FunctionGrid FunctionGrid::undefined(int arity, int n, int m) {
  check_grid_shape(arity, n, m);
  FunctionGrid g;
  g.arity = arity;
  g.n = n;
  g.m = m;
  g.entries.assign(g.domain_size(), -1);
  return g;
}

FunctionGrid FunctionGrid::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty grid file");
  std::istringstream hs(header);
  std::string tag, fa, fn, fm;
  hs >> tag >> fa >> fn >> fm;
  if (tag != "func" || fa.rfind("arity=", 0) != 0 || fn.rfind("n=", 0) != 0 ||
      fm.rfind("m=", 0) != 0) {
    throw ParseError("grid header must be `func arity=<1|2> n=<n> m=<m>`");
  }
  int arity, n, m;
  try {
    arity = std::stoi(fa.substr(6));
    n = std::stoi(fn.substr(2));
    m = std::stoi(fm.substr(2));
  } catch (const std::exception&) {
    throw ParseError("bad grid header numbers");
  }
  FunctionGrid g = undefined(arity, n, m);
  for (std::uint64_t i = 0; i < g.domain_size(); ++i) {
    std::string tok;
    if (!(in >> tok)) throw ParseError("grid: expected " + std::to_string(g.domain_size()) + " tokens");
    if (tok == "?") continue;
    if (tok == ".") {
      if (m != 0) throw ParseError("grid: '.' token in a grid with m > 0");
      g.entries[i] = 0;
      continue;
    }
    if (static_cast<int>(tok.size()) != m) {
      throw ParseError("grid: token of wrong length (want " + std::to_string(m) + " bits)");
    }
    g.entries[i] = static_cast<std::int64_t>(BitString(tok).index());
  }
  std::string extra;
  if (in >> extra) throw ParseError("grid: trailing tokens");
  return g;
}

FunctionGrid FunctionGrid::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file: " + path);
  return read(in);
}

void FunctionGrid::write(std::ostream& out) const {
  out << "func arity=" << arity << " n=" << n << " m=" << m << "\n";
  if (arity == 1) {
    for (std::uint64_t x = 0; x < N(); ++x) {
      if (x) out << ' ';
      out << grid_token(*this, entries[x]);
    }
    out << "\n";
  } else {
    for (std::uint64_t x = 0; x < N(); ++x) {
      for (std::uint64_t y = 0; y < N(); ++y) {
        if (y) out << ' ';
        out << grid_token(*this, at2(x, y));
      }
      out << "\n";
    }
  }
}

void FunctionGrid::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write grid file: " + path);
  write(out);
}

FunctionGrid random_grid(int arity, int n, int m, std::uint64_t seed,
                         int undefined_permille) {
  if (undefined_permille < 0 || undefined_permille > 1000) {
    throw Error("undefined_permille must lie in [0, 1000]");
  }
  FunctionGrid g = FunctionGrid::undefined(arity, n, m);
  Rng rng(seed);
  for (std::int64_t& e : g.entries) {
    const bool leave_undefined =
        undefined_permille > 0 &&
        rng.below(1000) < static_cast<std::uint64_t>(undefined_permille);
    if (!leave_undefined) e = static_cast<std::int64_t>(rng.below(g.M()));
  }
  return g;
}

AdvisedFamily AdvisedFamily::make(std::vector<FunctionGrid> functions) {
  if (functions.empty()) throw Error("family needs at least one function");
  const std::uint64_t K = functions.size();
  if (!std::has_single_bit(K + 1)) {
    throw Error("family size must be 2^(k+1) - 1 for some k >= 0");
  }
  const int k = std::bit_width(K + 1) - 2;
  for (const FunctionGrid& f : functions) {
    if (f.arity != 1) throw Error("family functions must have arity 1");
    if (f.n != functions.front().n || f.m != functions.front().m) {
      throw Error("family functions must share n and m");
    }
  }
  AdvisedFamily fam;
  fam.k = k;
  fam.functions = std::move(functions);
  return fam;
}

PopularResult most_popular_output(const FunctionGrid& f) {
  if (!f.total()) throw PartialFunctionError("most_popular_output needs a total function");
  std::vector<std::uint64_t> counts(f.M(), 0);
  for (std::int64_t e : f.entries) ++counts[static_cast<std::uint64_t>(e)];
  std::uint64_t best = 0;
  for (std::uint64_t z = 1; z < f.M(); ++z) {
    if (counts[z] > counts[best]) best = z;  // ties keep the smaller index
  }
  return {BitString::from_index(best, f.m), counts[best]};
}

OneSourceReport one_source_witness(const FunctionGrid& f, const DescriptionSystem& sys) {
  if (f.arity != 1) throw Error("one_source_witness needs an arity-1 function");
  const PopularResult pop = most_popular_output(f);
  OneSourceReport rep;
  rep.z = pop.z;
  rep.count = pop.count;
  const std::int64_t z_val = static_cast<std::int64_t>(pop.z.empty() ? 0 : pop.z.index());
  std::int64_t best_rank = INT64_MIN;
  for (std::uint64_t xv = 0; xv < f.N(); ++xv) {
    if (f.at1(xv) != z_val) continue;
    const BitString x = BitString::from_index(xv, f.n);
    const ComplexityValue c = sys.complexity(x);
    const std::int64_t rank = c.is_bot() ? -1 : c.value();
    if (c.is_bot()) rep.undefined_complexity = true;
    if (rank > best_rank) {  // first (lex smallest) x wins ties
      best_rank = rank;
      rep.x = x;
      rep.c_x = c;
    }
  }
  return rep;
}

std::vector<BitString> range_of(const AdvisedFamily& fam, const BitString& x) {
  if (x.length() != fam.n()) throw Error("range_of: |x| must equal the family's n");
  std::vector<BitString> out;
  for (const FunctionGrid& f : fam.functions) {
    const std::int64_t e = f.at1(x.index());
    if (e >= 0) out.push_back(BitString::from_index(static_cast<std::uint64_t>(e), fam.m()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::map<std::vector<BitString>, std::uint64_t> range_census(const AdvisedFamily& fam) {
  std::map<std::vector<BitString>, std::uint64_t> census;
  for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << fam.n()); ++xv) {
    ++census[range_of(fam, BitString::from_index(xv, fam.n()))];
  }
  return census;
}

}  // namespace

FrequentResult frequent_range(const AdvisedFamily& fam) {
  const auto census = range_census(fam);
  const std::uint64_t K = fam.K();
  const unsigned M = 1u << fam.m();
  const mpz_class b = binom_sum(M, static_cast<unsigned>(std::min<std::uint64_t>(K, M)));
  const mpz_class domain = pow2_z(static_cast<unsigned long>(fam.n()));

  FrequentResult res;
  res.threshold = mpq_class(domain) / mpq_class(b);
  // frequent: count * b >= 2^n, exactly
  std::size_t best_size = 0;
  bool have = false;
  for (const auto& [set, count] : census) {
    if (mpz_class(static_cast<unsigned long>(count)) * b >= domain) {
      if (!have || set.size() > best_size) {
        have = true;
        best_size = set.size();
        res.set = set;
        res.count = count;
      }
    }
  }
  if (!have) throw Error("internal: pigeonhole guarantees a frequent set");
  return res;
}

GreedyResult greedy_range_cover(const AdvisedFamily& fam) {
  const std::uint64_t N = std::uint64_t{1} << fam.n();
  const std::uint64_t M = std::uint64_t{1} << fam.m();
  const std::uint64_t K = fam.K();

  std::vector<std::vector<std::uint64_t>> ranges(N);
  for (std::uint64_t xv = 0; xv < N; ++xv) {
    for (const BitString& z : range_of(fam, BitString::from_index(xv, fam.n()))) {
      ranges[xv].push_back(z.empty() ? 0 : z.index());
    }
  }
  const auto contains = [](const std::vector<std::uint64_t>& sorted, std::uint64_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };

  const mpz_class T(static_cast<unsigned long>(M + 1));  // 2^m + 1
  std::vector<char> marked(N, 1);
  std::uint64_t marked_count = N;
  std::vector<std::uint64_t> picked;

  GreedyResult res;
  for (std::uint64_t iter = 1; iter <= K; ++iter) {
    bool found = false;
    for (std::uint64_t zv = 0; zv < M && !found; ++zv) {
      if (std::find(picked.begin(), picked.end(), zv) != picked.end()) continue;
      std::uint64_t hits = 0;
      for (std::uint64_t xv = 0; xv < N; ++xv) {
        if (marked[xv] && contains(ranges[xv], zv)) ++hits;
      }
      // hits >= marked_count / T, exactly
      if (mpz_class(static_cast<unsigned long>(hits)) * T >=
          mpz_class(static_cast<unsigned long>(marked_count))) {
        for (std::uint64_t xv = 0; xv < N; ++xv) {
          if (marked[xv] && !contains(ranges[xv], zv)) marked[xv] = 0;
        }
        marked_count = hits;
        picked.push_back(zv);
        found = true;
      }
    }
    if (!found) {
      res.failed_early = true;
      break;
    }
    res.iterations = static_cast<int>(iter);
  }

  for (std::uint64_t zv : picked) res.picked.push_back(BitString::from_index(zv, fam.m()));
  std::vector<std::uint64_t> sorted = picked;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t zv : sorted) res.set.push_back(BitString::from_index(zv, fam.m()));

  // exact recount of ranges equal to the returned set
  for (std::uint64_t xv = 0; xv < N; ++xv) {
    if (ranges[xv] == sorted) ++res.count;
  }
  mpz_class tk;
  mpz_pow_ui(tk.get_mpz_t(), T.get_mpz_t(), static_cast<unsigned long>(K));
  res.bound = mpq_class(pow2_z(static_cast<unsigned long>(fam.n()))) / mpq_class(tk);
  return res;
}

TwoSourceReport two_source_witness(const FunctionGrid& f, int alpha,
                                   const DescriptionSystem& sys) {
  if (f.arity != 2) throw Error("two_source_witness needs an arity-2 function");
  if (!f.total()) throw PartialFunctionError("two_source_witness needs a total function");
  if (alpha < 0 || alpha > f.m) throw Error("two_source_witness needs 0 <= alpha <= m");

  const std::uint64_t N = f.N();
  // a = most popular alpha-bit prefix value of the output
  std::vector<std::uint64_t> counts(std::uint64_t{1} << alpha, 0);
  const int shift = f.m - alpha;
  for (std::int64_t e : f.entries) {
    ++counts[static_cast<std::uint64_t>(e) >> shift];
  }
  std::uint64_t a_val = 0;
  for (std::uint64_t v = 1; v < counts.size(); ++v) {
    if (counts[v] > counts[a_val]) a_val = v;
  }

  TwoSourceReport rep;
  rep.a = BitString::from_index(a_val, alpha);
  rep.preimage = counts[a_val];

  std::int64_t best_rank = INT64_MIN;
  BitString bx, by;
  for (std::uint64_t xv = 0; xv < N; ++xv) {
    for (std::uint64_t yv = 0; yv < N; ++yv) {
      if (static_cast<std::uint64_t>(f.at2(xv, yv)) >> shift != a_val) continue;
      const BitString x = BitString::from_index(xv, f.n);
      const BitString y = BitString::from_index(yv, f.n);
      const ComplexityValue c = sys.complexity(x + y);
      const std::int64_t rank = c.is_bot() ? -1 : c.value();
      if (c.is_bot()) rep.undefined_complexity = true;
      if (rank > best_rank) {
        best_rank = rank;
        bx = x;
        by = y;
        rep.c_xy = c;
      }
    }
  }
  rep.x = bx;
  rep.y = by;
  rep.c_x_given_y = sys.complexity(bx, by);
  rep.c_y_given_x = sys.complexity(by, bx);
  rep.c_f = sys.complexity(
      BitString::from_index(static_cast<std::uint64_t>(f.at2(bx.index(), by.index())), f.m));

  const double n = static_cast<double>(f.n);
  rep.target_conditional = n - alpha - 2.0 * safe_log2(n);
  rep.target_output =
      f.m - alpha + safe_log2(n) + 2.0 * safe_log2(static_cast<double>(alpha));
  return rep;
}

void FiniteDistribution::validate() const {
  mpq_class total = 0;
  for (const auto& [key, p] : prob) {
    if (static_cast<int>(key.size()) != arity) throw Error("distribution key arity mismatch");
    if (p <= 0) throw Error("distribution masses must be positive");
    total += p;
  }
  if (total != 1) throw Error("distribution masses must sum to exactly 1");
}

FiniteDistribution FiniteDistribution::read(std::istream& in) {
  FiniteDistribution d;
  bool arity_known = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key, frac;
    if (!(ls >> key)) continue;
    if (key[0] == '#') continue;
    if (!(ls >> frac)) throw ParseError("line " + std::to_string(line_no) + ": missing probability");
    std::vector<BitString> parts;
    const auto comma = key.find(',');
    const auto field = [&](const std::string& s) {
      return s == "." ? BitString() : BitString(s);
    };
    if (comma == std::string::npos) {
      parts.push_back(field(key));
    } else {
      parts.push_back(field(key.substr(0, comma)));
      parts.push_back(field(key.substr(comma + 1)));
    }
    if (!arity_known) {
      d.arity = static_cast<int>(parts.size());
      arity_known = true;
    } else if (static_cast<int>(parts.size()) != d.arity) {
      throw ParseError("line " + std::to_string(line_no) + ": mixed key arity");
    }
    const mpq_class p = parse_rational(frac);
    if (!d.prob.emplace(std::move(parts), p).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key");
    }
  }
  d.validate();
  return d;
}

FiniteDistribution FiniteDistribution::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open distribution file: " + path);
  return read(in);
}

void FiniteDistribution::write(std::ostream& out) const {
  for (const auto& [key, p] : prob) {
    std::string k;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) k += ',';
      k += key[i].empty() ? "." : key[i].str();
    }
    out << k << ' ' << rational_string(p) << "\n";
  }
}

MinEntropyResult min_entropy(const FiniteDistribution& d) {
  d.validate();
  MinEntropyResult r;
  r.p_max = 0;
  for (const auto& [key, p] : d.prob) {
    if (p > r.p_max) r.p_max = p;
  }
  r.h_infinity = -std::log2(to_double(r.p_max));
  return r;
}

AdversaryReport min_entropy_adversary(const FunctionGrid& f, int alpha) {
  if (f.arity != 2) throw Error("min_entropy_adversary needs an arity-2 function");
  if (!f.total()) throw PartialFunctionError("min_entropy_adversary needs a total function");
  if (alpha < 0 || alpha > f.m) throw Error("min_entropy_adversary needs 0 <= alpha <= m");
  if (alpha > 2 * f.n) {
    throw Error("min_entropy_adversary needs alpha <= 2n so B has integral size");
  }
  if (2 * f.n - alpha > 40) throw SizeLimitError("B would be too large at this (n, alpha)");

  const std::uint64_t N = f.N();
  const int shift = f.m - alpha;

  // Most popular prefix value a, its preimage P in lexicographic pair order.
  std::vector<std::uint64_t> counts(std::uint64_t{1} << alpha, 0);
  for (std::int64_t e : f.entries) ++counts[static_cast<std::uint64_t>(e) >> shift];
  std::uint64_t a_val = 0;
  for (std::uint64_t v = 1; v < counts.size(); ++v) {
    if (counts[v] > counts[a_val]) a_val = v;
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> preimage;
  for (std::uint64_t xv = 0; xv < N; ++xv) {
    for (std::uint64_t yv = 0; yv < N; ++yv) {
      if (static_cast<std::uint64_t>(f.at2(xv, yv)) >> shift == a_val) {
        preimage.emplace_back(xv, yv);
      }
    }
  }

  // Most popular suffix value b inside the preimage (ties lexicographic).
  const std::uint64_t suffix_space = std::uint64_t{1} << shift;
  std::vector<std::uint64_t> suffix_counts(suffix_space, 0);
  for (const auto& [xv, yv] : preimage) {
    ++suffix_counts[static_cast<std::uint64_t>(f.at2(xv, yv)) & (suffix_space - 1)];
  }
  std::uint64_t b_val = 0;
  for (std::uint64_t v = 1; v < suffix_space; ++v) {
    if (suffix_counts[v] > suffix_counts[b_val]) b_val = v;
  }

  const std::uint64_t need = std::uint64_t{1} << (2 * f.n - alpha);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> b_set;
  b_set.reserve(need);
  for (const auto& pr : preimage) {  // suffix class first
    if (b_set.size() == need) break;
    if ((static_cast<std::uint64_t>(f.at2(pr.first, pr.second)) & (suffix_space - 1)) ==
        b_val) {
      b_set.push_back(pr);
    }
  }
  for (const auto& pr : preimage) {  // then pad from the rest of g^-1(a)
    if (b_set.size() == need) break;
    if ((static_cast<std::uint64_t>(f.at2(pr.first, pr.second)) & (suffix_space - 1)) !=
        b_val) {
      b_set.push_back(pr);
    }
  }
  if (b_set.size() != need) throw Error("internal: |g^-1(a)| >= 2^(2n-alpha) must hold");

  AdversaryReport rep;
  rep.a = BitString::from_index(a_val, alpha);
  rep.b = BitString::from_index(b_val, shift);
  rep.joint.arity = 2;
  const mpq_class unit = mpq_class(1) / mpq_class(mpz_class(static_cast<unsigned long>(need)));
  std::map<BitString, std::uint64_t> mult_x, mult_y;
  const std::uint64_t designated =
      (a_val << shift) | b_val;
  std::uint64_t designated_hits = 0;
  for (const auto& [xv, yv] : b_set) {
    const BitString x = BitString::from_index(xv, f.n);
    const BitString y = BitString::from_index(yv, f.n);
    rep.joint.prob[{x, y}] = unit;
    ++mult_x[x];
    ++mult_y[y];
    if (static_cast<std::uint64_t>(f.at2(xv, yv)) == designated) ++designated_hits;
  }
  rep.joint.validate();

  const auto max_mult = [&](const std::map<BitString, std::uint64_t>& mult) -> mpq_class {
    std::uint64_t best = 0;
    for (const auto& [key, c] : mult) best = std::max(best, c);
    return mpq_class(mpz_class(static_cast<unsigned long>(best))) /
           mpq_class(mpz_class(static_cast<unsigned long>(need)));
  };
  rep.marginal_x_pmax = max_mult(mult_x);
  rep.marginal_y_pmax = max_mult(mult_y);
  rep.joint_pmax = unit;
  rep.prob_designated = mpq_class(mpz_class(static_cast<unsigned long>(designated_hits))) /
                        mpq_class(mpz_class(static_cast<unsigned long>(need)));

  rep.ok_marginal_x = rep.marginal_x_pmax <= pow2_q(alpha - f.n);
  rep.ok_marginal_y = rep.marginal_y_pmax <= pow2_q(alpha - f.n);
  rep.ok_joint = rep.joint_pmax == pow2_q(alpha - 2 * f.n);
  rep.ok_output = rep.prob_designated >= pow2_q(alpha - f.m);
  return rep;
}

AmplificationReport amplification_harness(const FunctionGrid& f1,
                                          const FunctionGrid& f2,
                                          const ColorTable& T,
                                          const DescriptionSystem& sys,
                                          const AmplificationTask& task) {
  if (f1.arity != 2 || f2.arity != 2) throw Error("harness needs arity-2 functions");
  if (!f1.total() || !f2.total()) throw PartialFunctionError("harness needs total functions");
  if (f1.n != f2.n) throw Error("harness functions must share n");
  if (f1.m != task.l || f2.m != task.l) {
    throw Error("function output length must equal the task parameter l");
  }
  if (T.n != task.l) {
    throw LengthMismatchError("table side 2^" + std::to_string(T.n) +
                              " does not match l = " + std::to_string(task.l));
  }
  if (task.alpha < 0 || task.alpha > T.m) {
    throw Error("harness needs 0 <= alpha <= the table's m");
  }

  // Composition z = T(f1(x,y), f2(x,y)) as an explicit grid.
  FunctionGrid composed = FunctionGrid::undefined(2, f1.n, T.m);
  const std::uint64_t N = f1.N();
  for (std::uint64_t xv = 0; xv < N; ++xv) {
    for (std::uint64_t yv = 0; yv < N; ++yv) {
      const std::uint64_t u = static_cast<std::uint64_t>(f1.at2(xv, yv));
      const std::uint64_t v = static_cast<std::uint64_t>(f2.at2(xv, yv));
      composed.entries[xv * N + yv] = T.at(u, v);
    }
  }

  const TwoSourceReport tsw =
      two_source_witness(composed, static_cast<int>(task.alpha), sys);

  AmplificationReport rep;
  rep.x = tsw.x;
  rep.y = tsw.y;
  rep.u = BitString::from_index(static_cast<std::uint64_t>(f1.at2(tsw.x.index(), tsw.y.index())), f1.m);
  rep.v = BitString::from_index(static_cast<std::uint64_t>(f2.at2(tsw.x.index(), tsw.y.index())), f2.m);
  rep.z = extract(T, rep.u, rep.v);

  rep.c_x = sys.complexity(rep.x);
  rep.c_y = sys.complexity(rep.y);
  rep.c_x_given_y = sys.complexity(rep.x, rep.y);
  rep.c_y_given_x = sys.complexity(rep.y, rep.x);
  rep.c_u = sys.complexity(rep.u);
  rep.c_v = sys.complexity(rep.v);
  rep.c_u_given_v = sys.complexity(rep.u, rep.v);
  rep.c_v_given_u = sys.complexity(rep.v, rep.u);
  rep.c_z = sys.complexity(rep.z);
  rep.c_z_recomputed = sys.complexity(extract(T, rep.u, rep.v));

  const auto dep_of = [](const ComplexityValue& cx, const ComplexityValue& cy,
                         const ComplexityValue& cxy,
                         const ComplexityValue& cyx) -> std::optional<std::int64_t> {
    if (cx.is_bot() || cy.is_bot() || cxy.is_bot() || cyx.is_bot()) return std::nullopt;
    return std::max(cx.value() - cxy.value(), cy.value() - cyx.value());
  };
  rep.dep_xy = dep_of(rep.c_x, rep.c_y, rep.c_x_given_y, rep.c_y_given_x);
  rep.dep_uv = dep_of(rep.c_u, rep.c_v, rep.c_u_given_v, rep.c_v_given_u);

  const double log2n = safe_log2(static_cast<double>(f1.n));
  rep.clause2_target = static_cast<double>(task.beta) + static_cast<double>(task.a) * log2n;
  rep.output_small_target = static_cast<double>(T.m) - static_cast<double>(task.alpha) +
                            log2n + 2.0 * safe_log2(static_cast<double>(task.alpha));
  rep.extractor_target = static_cast<double>(T.m) - static_cast<double>(task.beta);

  const auto at_least = [](const ComplexityValue& c, double target) {
    return c.is_bot() || static_cast<double>(c.value()) >= target;
  };
  rep.input_complexity_ok = at_least(rep.c_x, static_cast<double>(task.s)) &&
                            at_least(rep.c_y, static_cast<double>(task.s));
  rep.input_dep_ok = rep.dep_xy.has_value() && *rep.dep_xy <= task.alpha;
  rep.clause1_ok = rep.dep_uv.has_value() && *rep.dep_uv <= task.beta;
  rep.clause2_ok = at_least(rep.c_u, rep.clause2_target) && at_least(rep.c_v, rep.clause2_target);
  rep.output_small_ok =
      !rep.c_z.is_bot() && static_cast<double>(rep.c_z.value()) <= rep.output_small_target;
  rep.extractor_promise_ok = at_least(rep.c_z, rep.extractor_target);

  rep.first_failure = "none";
  if (!rep.input_complexity_ok) {
    rep.first_failure = "input_complexity";
  } else if (!rep.input_dep_ok) {
    rep.first_failure = "input_dep";
  } else if (!rep.clause1_ok) {
    rep.first_failure = "clause1";
  } else if (!rep.clause2_ok) {
    rep.first_failure = "clause2";
  } else if (!rep.extractor_promise_ok) {
    rep.first_failure = "extractor_promise";
  } else if (!rep.output_small_ok) {
    rep.first_failure = "output_small";
  }
  return rep;
}

}  // namespace kolmo
