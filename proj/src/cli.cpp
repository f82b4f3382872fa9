#include "kolmo/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "kolmo/adversary.hpp"
#include "kolmo/bitstring.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/extractor.hpp"
#include "kolmo/oracle.hpp"
#include "kolmo/params.hpp"
#include "kolmo/table.hpp"

namespace kolmo::cli {
namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Ordered key=value report with a JSON mirror.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    keys_.push_back(key);
    json_[key] = value;
    text_[key] = value;
  }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, bool value) {
    keys_.push_back(key);
    json_[key] = value;
    text_[key] = value ? "true" : "false";
  }
  void add_int(const std::string& key, std::int64_t value) {
    keys_.push_back(key);
    json_[key] = value;
    text_[key] = std::to_string(value);
  }
  void add_uint(const std::string& key, std::uint64_t value) {
    keys_.push_back(key);
    json_[key] = value;
    text_[key] = std::to_string(value);
  }
  void add_double(const std::string& key, double value) {
    keys_.push_back(key);
    json_[key] = value;
    text_[key] = format_double(value);
  }

  void render(std::ostream& out, bool as_json) const {
    if (as_json) {
      out << json_.dump() << "\n";
    } else {
      for (const std::string& k : keys_) out << k << "=" << text_.at(k) << "\n";
    }
  }

 private:
  std::vector<std::string> keys_;
  nlohmann::ordered_json json_;
  std::map<std::string, std::string> text_;
};

std::string bits_text(const BitString& b) { return b.empty() ? "." : b.str(); }

std::string join_bits(const std::vector<BitString>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += bits_text(v[i]);
  }
  return out;
}

std::string join_indices(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

struct Args {
  std::map<std::string, std::string> flags;
  std::vector<std::string> positional;
  bool json = false;

  std::optional<std::string> get(const std::string& name) const {
    const auto it = flags.find(name);
    if (it == flags.end()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& name) const {
    const auto v = get(name);
    if (!v) throw UsageError("missing required flag --" + name);
    return *v;
  }
  std::int64_t require_int(const std::string& name) const {
    return parse_int(name, require(name));
  }
  std::int64_t get_int(const std::string& name, std::int64_t fallback) const {
    const auto v = get(name);
    return v ? parse_int(name, *v) : fallback;
  }
  std::uint64_t require_uint(const std::string& name) const {
    const std::int64_t v = require_int(name);
    if (v < 0) throw UsageError("--" + name + " must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  static std::int64_t parse_int(const std::string& name, const std::string& text) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw UsageError("--" + name + " expects an integer, got '" + text + "'");
    }
  }
  BitString require_bits(const std::string& name) const {
    return parse_bits(name, require(name));
  }
  static BitString parse_bits(const std::string& name, const std::string& text) {
    if (text == "." || text.empty()) return BitString();
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw UsageError("--" + name + " expects bits or '.', got '" + text + "'");
      }
    }
    return BitString(text);
  }
  mpq_class require_rational(const std::string& name) const {
    try {
      return parse_rational(require(name));
    } catch (const ParseError& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }
};

struct Verb {
  std::string name;  // "table verify"
  std::string synopsis;
  std::set<std::string> flags;       // allowed flag names
  int positional_count = 0;          // exact number of positionals
  std::string positional_name;
  std::function<int(const Args&, Report&)> handler;
};

int int_log2_exact(std::uint64_t v, const std::string& what) {
  if (v == 0 || (v & (v - 1)) != 0) throw UsageError(what + " must be a power of two");
  int e = 0;
  while ((std::uint64_t{1} << e) < v) ++e;
  return e;
}

DescriptionSystem load_sys(const Args& a) {
  return DescriptionSystem::load_file(a.require("sys"));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

AdvisedFamily load_family(const Args& a) {
  std::vector<FunctionGrid> funcs;
  for (const std::string& path : split_commas(a.require("funcs"))) {
    funcs.push_back(FunctionGrid::read_file(path));
  }
  return AdvisedFamily::make(std::move(funcs));
}

ExtractorParams params_from_flags(const Args& a, int n, int m) {
  const std::string mode = a.get("mode").value_or("paper");
  if (mode == "paper") {
    return derive_params(n, a.require_int("sn"), a.require_int("alpha"),
                         a.require_int("constc"), m);
  }
  if (mode == "desk") {
    mpz_class big_s, big_d;
    try {
      big_s = mpz_class(a.require("bigs"));
      big_d = mpz_class(a.require("bigd"));
    } catch (const std::invalid_argument&) {
      throw UsageError("--bigs/--bigd expect integers");
    }
    return desk_params(n, m, a.get_int("sn", 0), a.get_int("alpha", 0),
                       a.require_int("s"), big_s, big_d, a.require_int("t"));
  }
  throw UsageError("--mode must be paper or desk");
}

void add_verify_report(Report& rep, const VerifyReport& v) {
  rep.add("balanced", v.balanced);
  rep.add_uint("worst_count", v.worst_count);
  rep.add_double("bound", v.bound);
  rep.add("orientation", v.worst_orientation == Orientation::columns ? "columns" : "rows");
  rep.add("b1", join_indices(v.worst_b1));
  rep.add("b2", join_indices(v.worst_b2));
  rep.add_uint("rectangles_checked", v.rectangles_checked);
  const char* vac = v.vacuous == VacuousReason::none          ? "none"
                    : v.vacuous == VacuousReason::empty_family ? "empty_family"
                                                               : "bound_cap";
  rep.add("vacuous", vac);
}

VerifyMode verify_mode(const Args& a) {
  const std::string mode = a.get("mode").value_or("decomposed");
  if (mode == "decomposed") return VerifyMode::decomposed;
  if (mode == "exhaustive") return VerifyMode::exhaustive;
  throw UsageError("--mode must be decomposed or exhaustive");
}

Execution exec_mode(const Args& a) {
  const std::string exec = a.get("exec").value_or("parallel");
  if (exec == "serial") return Execution::serial;
  if (exec == "parallel") return Execution::parallel;
  throw UsageError("--exec must be serial or parallel");
}

// ---- verb handlers ----

int cmd_pair_encode(const Args& a, Report& rep) {
  const BitString s = encode_pair(a.require_bits("x1"), a.require_bits("x2"));
  rep.add("s", bits_text(s));
  return 0;
}

int cmd_pair_decode(const Args& a, Report& rep) {
  const auto [x1, x2] = decode_pair(a.require_bits("s"));
  rep.add("x1", bits_text(x1));
  rep.add("x2", bits_text(x2));
  return 0;
}

int cmd_bsum(const Args& a, Report& rep) {
  const std::int64_t n = a.require_int("n"), m = a.require_int("m");
  if (n < 0 || m < 0) throw UsageError("--n/--m must be nonnegative");
  rep.add("value", binom_sum(static_cast<unsigned>(n), static_cast<unsigned>(m)).get_str());
  return 0;
}

int cmd_params_check(const Args& a, Report& rep) {
  const std::uint64_t big_n = a.require_uint("bign");
  const std::uint64_t big_m = a.require_uint("bigm");
  const std::int64_t m = a.require_int("m");
  const int n = int_log2_exact(big_n, "--bign");
  if (m < 0 || (std::uint64_t{1} << m) != big_m) {
    throw UsageError("--bigm must equal 2^m");
  }
  const RainbowParams p = RainbowParams::make(n, static_cast<int>(m),
                                              a.require_uint("s"),
                                              a.require_rational("d"));
  const Feasibility f = rainbow_feasible(p);
  rep.add("feasible", f.feasible);
  rep.add_double("margin", f.margin);
  rep.add_double("rhs", f.rhs);
  rep.add("borderline", f.borderline);
  return f.feasible ? 0 : 1;
}

int cmd_params_derive(const Args& a, Report& rep) {
  ExtractorParams p;
  const std::string mode = a.get("mode").value_or("paper");
  if (mode == "paper") {
    p = derive_params(a.require_int("n"), a.require_int("sn"), a.require_int("alpha"),
                      a.require_int("constc"), a.require_int("m"));
  } else if (mode == "desk") {
    mpz_class big_s, big_d;
    try {
      big_s = mpz_class(a.require("bigs"));
      big_d = mpz_class(a.require("bigd"));
    } catch (const std::invalid_argument&) {
      throw UsageError("--bigs/--bigd expect integers");
    }
    p = desk_params(a.get_int("n", 0), a.get_int("m", 0), a.get_int("sn", 0),
                    a.get_int("alpha", 0), a.require_int("s"), big_s, big_d,
                    a.require_int("t"));
  } else {
    throw UsageError("--mode must be paper or desk");
  }
  rep.add("mode", p.mode == ExtractorParams::Mode::paper ? "paper" : "desk");
  rep.add_int("n", p.n);
  rep.add_int("sn", p.s_n);
  rep.add_int("alpha", p.alpha);
  rep.add_int("constc", p.const_c);
  rep.add_int("m", p.m);
  rep.add_int("s", p.s);
  rep.add("bigs", p.S.get_str());
  rep.add_int("t", p.t);
  rep.add("bigd", p.D.get_str());
  return 0;
}

int cmd_oracle_load(const Args& a, Report& rep) {
  const DescriptionSystem sys = load_sys(a);
  rep.add("name", sys.name());
  rep.add_uint("entries", sys.entries().size());
  return 0;
}

int cmd_oracle_gen(const Args& a, Report& rep) {
  const std::string kind = a.require("kind");
  const std::int64_t max_len = a.require_int("maxlen");
  DescriptionSystem sys;
  if (kind == "random") {
    sys = random_system(static_cast<int>(max_len),
                        static_cast<std::uint64_t>(a.require_int("seed")));
  } else if (kind == "literal") {
    sys = literal_system(static_cast<int>(max_len),
                         static_cast<int>(a.get_int("condlen", max_len)));
  } else {
    throw UsageError("--kind must be random or literal");
  }
  const std::string out_path = a.require("out");
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write system file: " + out_path);
  sys.save(out);
  rep.add("kind", kind);
  rep.add_uint("entries", sys.entries().size());
  rep.add("out", out_path);
  return 0;
}

int cmd_oracle_c(const Args& a, Report& rep) {
  const DescriptionSystem sys = load_sys(a);
  const BitString cond = a.get("cond") ? Args::parse_bits("cond", *a.get("cond")) : BitString();
  rep.add("c", sys.complexity(a.require_bits("x"), cond).str());
  return 0;
}

int cmd_oracle_dep(const Args& a, Report& rep) {
  const DescriptionSystem sys = load_sys(a);
  const DependencyReport d = dependency(sys, a.require_bits("x"), a.require_bits("y"));
  rep.add("c_x", d.c_x.str());
  rep.add("c_y", d.c_y.str());
  rep.add("c_x_given_y", d.c_x_given_y.str());
  rep.add("c_y_given_x", d.c_y_given_x.str());
  rep.add_int("dep", d.dep);
  return 0;
}

int cmd_oracle_profile(const Args& a, Report& rep) {
  const DescriptionSystem sys = load_sys(a);
  const BitString cond = a.get("cond") ? Args::parse_bits("cond", *a.get("cond")) : BitString();
  const std::vector<BitString> set =
      sys.profile_set(a.require_int("t"), cond, static_cast<int>(a.require_int("len")));
  rep.add_uint("count", set.size());
  rep.add("elements", join_bits(set));
  return 0;
}

int cmd_oracle_soi(const Args& a, Report& rep) {
  const DescriptionSystem sys = load_sys(a);
  const SoiSlacks s = soi_slack(sys, a.require_bits("x"), a.require_bits("y"));
  rep.add_double("slack_a", s.a);
  rep.add_double("slack_b", s.b);
  rep.add_double("slack_c", s.c);
  return 0;
}

int cmd_table_gen(const Args& a, Report& rep) {
  const ColorTable t =
      random_table(static_cast<int>(a.require_int("n")), static_cast<int>(a.require_int("m")),
                   static_cast<std::uint64_t>(a.require_int("seed")));
  const std::string out_path = a.require("out");
  t.write_file(out_path);
  rep.add_int("n", t.n);
  rep.add_int("m", t.m);
  rep.add_uint("cells", t.cells.size());
  rep.add("out", out_path);
  return 0;
}

int cmd_table_verify(const Args& a, Report& rep) {
  const ColorTable t = ColorTable::read_file(a.positional[0]);
  const VerifyReport v = verify_rainbow(t, a.require_uint("s"), a.require_rational("d"),
                                        verify_mode(a), exec_mode(a));
  add_verify_report(rep, v);
  return v.balanced ? 0 : 1;
}

int cmd_table_smallest(const Args& a, Report& rep) {
  const RainbowParams p =
      RainbowParams::make(static_cast<int>(a.require_int("n")),
                          static_cast<int>(a.require_int("m")), a.require_uint("s"),
                          a.require_rational("d"));
  try {
    const ColorTable t = smallest_rainbow(p);
    rep.add("found", true);
    std::ostringstream cells;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      if (i) cells << ' ';
      cells << t.cells[i];
    }
    rep.add("cells", cells.str());
    if (const auto out_path = a.get("out")) {
      t.write_file(*out_path);
      rep.add("out", *out_path);
    }
    return 0;
  } catch (const NotFoundError& e) {
    rep.add("found", false);
    rep.add("reason", e.what());
    return 1;
  }
}

int cmd_table_mc(const Args& a, Report& rep) {
  const RainbowParams p =
      RainbowParams::make(static_cast<int>(a.require_int("n")),
                          static_cast<int>(a.require_int("m")), a.require_uint("s"),
                          a.require_rational("d"));
  const int max_tries = static_cast<int>(a.get_int("max-tries", 100));
  try {
    const MonteCarloResult r = monte_carlo_rainbow(
        p, max_tries, static_cast<std::uint64_t>(a.require_int("seed")));
    rep.add("found", true);
    rep.add_int("tries", r.tries);
    if (const auto out_path = a.get("out")) {
      r.table.write_file(*out_path);
      rep.add("out", *out_path);
    }
    return 0;
  } catch (const ExhaustedTriesError&) {
    rep.add("found", false);
    rep.add_int("tries", max_tries);
    return 1;
  }
}

int cmd_table_stripmax(const Args& a, Report& rep) {
  const ColorTable t = ColorTable::read_file(a.positional[0]);
  std::vector<std::uint64_t> rows;
  for (const std::string& tok : split_commas(a.require("rows"))) {
    if (tok.empty()) continue;
    rows.push_back(static_cast<std::uint64_t>(Args::parse_int("rows", tok)));
  }
  const ColorSetFamily fam = ColorSetFamily::make(t.M(), t.m, a.require_rational("d"));
  const StripMax s = column_strip_max(t, rows, a.require_uint("col"), fam);
  rep.add_uint("value", s.count);
  rep.add("vacuous", s.vacuous);
  return 0;
}

int cmd_extract(const Args& a, Report& rep) {
  const ColorTable t = ColorTable::read_file(a.require("table"));
  rep.add("z", bits_text(extract(t, a.require_bits("x"), a.require_bits("y"))));
  return 0;
}

int cmd_badcols(const Args& a, Report& rep) {
  const ColorTable t = ColorTable::read_file(a.require("table"));
  const DescriptionSystem sys = load_sys(a);
  const std::vector<std::uint64_t> bad =
      bad_columns(t, sys, a.require_int("t1"), a.require_int("t"), exec_mode(a));
  rep.add_uint("count", bad.size());
  rep.add("columns", join_indices(bad));
  return 0;
}

int cmd_audit(const Args& a, Report& rep) {
  const ColorTable t = ColorTable::read_file(a.require("table"));
  const DescriptionSystem sys = load_sys(a);
  const ExtractorParams p = params_from_flags(a, t.n, t.m);
  const AuditReport r = audit_extraction(sys, t, a.require_bits("x"), a.require_bits("y"), p);
  rep.add("hypothesis_i", r.hypothesis_i);
  rep.add("hypothesis_ii", r.hypothesis_ii);
  rep.add("z", bits_text(r.z));
  rep.add("c_x", r.c_x.str());
  rep.add("c_y", r.c_y.str());
  rep.add("cz_given_x", r.cz_given_x.str());
  rep.add("cz_given_y", r.cz_given_y.str());
  rep.add_int("target", r.target);
  rep.add("verdict1", r.verdict1);
  rep.add("verdict2", r.verdict2);
  std::string notes;
  for (std::size_t i = 0; i < r.notes.size(); ++i) {
    if (i) notes += "; ";
    notes += r.notes[i];
  }
  rep.add("notes", notes);
  return 0;
}

int cmd_adversary_popular(const Args& a, Report& rep) {
  const PopularResult r = most_popular_output(FunctionGrid::read_file(a.require("f")));
  rep.add("z", bits_text(r.z));
  rep.add_uint("count", r.count);
  return 0;
}

int cmd_adversary_witness1(const Args& a, Report& rep) {
  const OneSourceReport r =
      one_source_witness(FunctionGrid::read_file(a.require("f")), load_sys(a));
  rep.add("x", bits_text(r.x));
  rep.add("c", r.c_x.str());
  rep.add("z", bits_text(r.z));
  rep.add_uint("count", r.count);
  rep.add("undefined_complexity", r.undefined_complexity);
  return 0;
}

int cmd_adversary_range(const Args& a, Report& rep) {
  const AdvisedFamily fam = load_family(a);
  const std::vector<BitString> r = range_of(fam, a.require_bits("x"));
  rep.add_uint("size", r.size());
  rep.add("range", join_bits(r));
  return 0;
}

int cmd_adversary_frequent(const Args& a, Report& rep) {
  const FrequentResult r = frequent_range(load_family(a));
  rep.add("set", join_bits(r.set));
  rep.add_uint("count", r.count);
  rep.add("threshold", rational_string(r.threshold));
  return 0;
}

int cmd_adversary_greedy(const Args& a, Report& rep) {
  const GreedyResult r = greedy_range_cover(load_family(a));
  rep.add("set", join_bits(r.set));
  rep.add("picked", join_bits(r.picked));
  rep.add_uint("count", r.count);
  rep.add_int("iterations", r.iterations);
  rep.add("failed_early", r.failed_early);
  rep.add("bound", rational_string(r.bound));
  return 0;
}

int cmd_adversary_witness2(const Args& a, Report& rep) {
  const TwoSourceReport r =
      two_source_witness(FunctionGrid::read_file(a.require("f")),
                         static_cast<int>(a.require_int("alpha")), load_sys(a));
  rep.add("x", bits_text(r.x));
  rep.add("y", bits_text(r.y));
  rep.add("a", bits_text(r.a));
  rep.add_uint("preimage", r.preimage);
  rep.add("c_xy", r.c_xy.str());
  rep.add("c_x_given_y", r.c_x_given_y.str());
  rep.add("c_y_given_x", r.c_y_given_x.str());
  rep.add("c_f", r.c_f.str());
  rep.add_double("target_conditional", r.target_conditional);
  rep.add_double("target_output", r.target_output);
  rep.add("undefined_complexity", r.undefined_complexity);
  return 0;
}

int cmd_adversary_entropy(const Args& a, Report& rep) {
  const MinEntropyResult r =
      min_entropy(FiniteDistribution::read_file(a.require("dist")));
  rep.add("pmax", rational_string(r.p_max));
  rep.add_double("hinf", r.h_infinity);
  return 0;
}

int cmd_adversary_minentropy(const Args& a, Report& rep) {
  const AdversaryReport r = min_entropy_adversary(
      FunctionGrid::read_file(a.require("f")), static_cast<int>(a.require_int("alpha")));
  rep.add("a", bits_text(r.a));
  rep.add("b", bits_text(r.b));
  rep.add("marginal_x_pmax", rational_string(r.marginal_x_pmax));
  rep.add("marginal_y_pmax", rational_string(r.marginal_y_pmax));
  rep.add("joint_pmax", rational_string(r.joint_pmax));
  rep.add("prob_designated", rational_string(r.prob_designated));
  rep.add("ok_marginal_x", r.ok_marginal_x);
  rep.add("ok_marginal_y", r.ok_marginal_y);
  rep.add("ok_joint", r.ok_joint);
  rep.add("ok_output", r.ok_output);
  if (const auto out_path = a.get("out")) {
    std::ofstream out(*out_path);
    if (!out) throw Error("cannot write distribution file: " + *out_path);
    r.joint.write(out);
    rep.add("out", *out_path);
  }
  const bool all_ok = r.ok_marginal_x && r.ok_marginal_y && r.ok_joint && r.ok_output;
  return all_ok ? 0 : 1;
}

int cmd_adversary_amplify(const Args& a, Report& rep) {
  AmplificationTask task;
  task.alpha = a.require_int("alpha");
  task.beta = a.require_int("beta");
  task.s = a.require_int("s");
  task.l = a.require_int("l");
  task.a = a.require_int("a");
  const AmplificationReport r = amplification_harness(
      FunctionGrid::read_file(a.require("f1")), FunctionGrid::read_file(a.require("f2")),
      ColorTable::read_file(a.require("table")), load_sys(a), task);
  rep.add("x", bits_text(r.x));
  rep.add("y", bits_text(r.y));
  rep.add("u", bits_text(r.u));
  rep.add("v", bits_text(r.v));
  rep.add("z", bits_text(r.z));
  rep.add("c_x", r.c_x.str());
  rep.add("c_y", r.c_y.str());
  rep.add("c_u", r.c_u.str());
  rep.add("c_v", r.c_v.str());
  rep.add("c_z", r.c_z.str());
  rep.add("c_z_recomputed", r.c_z_recomputed.str());
  rep.add("dep_xy", r.dep_xy ? std::to_string(*r.dep_xy) : "bot");
  rep.add("dep_uv", r.dep_uv ? std::to_string(*r.dep_uv) : "bot");
  rep.add("input_complexity_ok", r.input_complexity_ok);
  rep.add("input_dep_ok", r.input_dep_ok);
  rep.add("clause1_ok", r.clause1_ok);
  rep.add("clause2_ok", r.clause2_ok);
  rep.add_double("clause2_target", r.clause2_target);
  rep.add("output_small_ok", r.output_small_ok);
  rep.add_double("output_small_target", r.output_small_target);
  rep.add("extractor_promise_ok", r.extractor_promise_ok);
  rep.add_double("extractor_target", r.extractor_target);
  rep.add("first_failure", r.first_failure);
  return 0;
}

int cmd_grid_gen(const Args& a, Report& rep) {
  const FunctionGrid g = random_grid(
      static_cast<int>(a.require_int("arity")), static_cast<int>(a.require_int("n")),
      static_cast<int>(a.require_int("m")), static_cast<std::uint64_t>(a.require_int("seed")),
      static_cast<int>(a.get_int("undef", 0)));
  const std::string out_path = a.require("out");
  g.write_file(out_path);
  rep.add_int("arity", g.arity);
  rep.add_int("n", g.n);
  rep.add_int("m", g.m);
  rep.add("total", g.total());
  rep.add("out", out_path);
  return 0;
}

const std::vector<Verb>& verbs() {
  static const std::vector<Verb> table = {
      {"pair encode", "self-delimiting pair encoding", {"x1", "x2"}, 0, "", cmd_pair_encode},
      {"pair decode", "invert the pair encoding", {"s"}, 0, "", cmd_pair_decode},
      {"bsum", "binomial prefix sum b(n,m)", {"n", "m"}, 0, "", cmd_bsum},
      {"params check",
       "rainbow feasibility inequality",
       {"bign", "bigm", "m", "s", "d"},
       0,
       "",
       cmd_params_check},
      {"params derive",
       "extractor parameter derivation",
       {"mode", "n", "sn", "alpha", "constc", "m", "s", "bigs", "bigd", "t"},
       0,
       "",
       cmd_params_derive},
      {"oracle load", "parse a description system", {"sys"}, 0, "", cmd_oracle_load},
      {"oracle gen",
       "bundled system generators",
       {"kind", "maxlen", "condlen", "seed", "out"},
       0,
       "",
       cmd_oracle_gen},
      {"oracle c", "complexity of x (optionally conditional)", {"sys", "x", "cond"}, 0, "", cmd_oracle_c},
      {"oracle dep", "dependency of two strings", {"sys", "x", "y"}, 0, "", cmd_oracle_dep},
      {"oracle profile",
       "strings of a given length with C(.|cond) <= t",
       {"sys", "t", "cond", "len"},
       0,
       "",
       cmd_oracle_profile},
      {"oracle soi", "symmetry-of-information slacks", {"sys", "x", "y"}, 0, "", cmd_oracle_soi},
      {"table gen", "seeded random color table", {"n", "m", "seed", "out"}, 0, "", cmd_table_gen},
      {"table verify",
       "rainbow-balance verification",
       {"s", "d", "mode", "exec"},
       1,
       "TABLE",
       cmd_table_verify},
      {"table smallest",
       "first balanced table in canonical order",
       {"n", "m", "s", "d", "out"},
       0,
       "",
       cmd_table_smallest},
      {"table mc",
       "sample random tables until one verifies",
       {"n", "m", "s", "d", "seed", "max-tries", "out"},
       0,
       "",
       cmd_table_mc},
      {"table stripmax",
       "best properly-colored count in one column strip",
       {"rows", "col", "d"},
       1,
       "TABLE",
       cmd_table_stripmax},
      {"extract", "evaluate the table extractor", {"table", "x", "y"}, 0, "", cmd_extract},
      {"badcols",
       "columns overloaded on the profile set",
       {"table", "sys", "t1", "t", "exec"},
       0,
       "",
       cmd_badcols},
      {"audit",
       "hypothesis/conclusion audit of an extraction",
       {"table", "sys", "x", "y", "mode", "sn", "alpha", "constc", "s", "bigs", "bigd", "t"},
       0,
       "",
       cmd_audit},
      {"adversary popular", "most popular output", {"f"}, 0, "", cmd_adversary_popular},
      {"adversary witness1",
       "high-complexity element of the popular preimage",
       {"f", "sys"},
       0,
       "",
       cmd_adversary_witness1},
      {"adversary range", "outputs of an advised family on x", {"funcs", "x"}, 0, "", cmd_adversary_range},
      {"adversary frequent",
       "largest frequent Range value",
       {"funcs"},
       0,
       "",
       cmd_adversary_frequent},
      {"adversary greedy",
       "greedy Range cover with threshold 1/(2^m+1)",
       {"funcs"},
       0,
       "",
       cmd_adversary_greedy},
      {"adversary witness2",
       "witness pair for a two-source function",
       {"f", "alpha", "sys"},
       0,
       "",
       cmd_adversary_witness2},
      {"adversary entropy", "min-entropy of a distribution file", {"dist"}, 0, "", cmd_adversary_entropy},
      {"adversary minentropy",
       "exact min-entropy adversary for a two-source function",
       {"f", "alpha", "out"},
       0,
       "",
       cmd_adversary_minentropy},
      {"adversary amplify",
       "dependency-reduction chain report",
       {"f1", "f2", "table", "sys", "alpha", "beta", "s", "l", "a"},
       0,
       "",
       cmd_adversary_amplify},
      {"grid gen", "seeded random function grid", {"arity", "n", "m", "seed", "undef", "out"}, 0, "", cmd_grid_gen},
  };
  return table;
}

void print_help(std::ostream& out) {
  out << "kolmo -- two-source extraction workbench at desk scale\n\n"
      << "usage: kolmo <verb> [flags] [--format text|json]\n\n"
      << "verbs:\n";
  for (const Verb& v : verbs()) {
    out << "  " << v.name;
    if (v.positional_count > 0) out << " <" << v.positional_name << ">";
    for (const std::string& f : v.flags) out << " --" << f;
    out << "\n      " << v.synopsis << "\n";
  }
  out << "\nexit codes: 0 ok, 1 property false, 2 usage/parse error\n"
      << "KOLMO_MAX_N overrides the table-side desk limit (default 256)\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty()) throw UsageError("no verb; try --help");
    if (args[0] == "--help" || args[0] == "help") {
      print_help(out);
      return 0;
    }

    // Longest verb-path match: try two tokens, then one.
    const Verb* verb = nullptr;
    std::size_t consumed = 0;
    if (args.size() >= 2) {
      const std::string two = args[0] + " " + args[1];
      for (const Verb& v : verbs()) {
        if (v.name == two) {
          verb = &v;
          consumed = 2;
          break;
        }
      }
    }
    if (!verb) {
      for (const Verb& v : verbs()) {
        if (v.name == args[0]) {
          verb = &v;
          consumed = 1;
          break;
        }
      }
    }
    if (!verb) throw UsageError("unknown verb '" + args[0] + "'; try --help");

    Args parsed;
    for (std::size_t i = consumed; i < args.size(); ++i) {
      const std::string& tok = args[i];
      if (tok == "--help") {
        print_help(out);
        return 0;
      }
      if (tok.rfind("--", 0) == 0) {
        const std::string name = tok.substr(2);
        if (name == "format") {
          if (i + 1 >= args.size()) throw UsageError("--format needs a value");
          const std::string v = args[++i];
          if (v == "json") {
            parsed.json = true;
          } else if (v != "text") {
            throw UsageError("--format must be text or json");
          }
          continue;
        }
        if (!verb->flags.count(name)) {
          throw UsageError("unknown flag --" + name + " for '" + verb->name + "'");
        }
        if (i + 1 >= args.size()) throw UsageError("--" + name + " needs a value");
        if (!parsed.flags.emplace(name, args[++i]).second) {
          throw UsageError("duplicate flag --" + name);
        }
      } else {
        parsed.positional.push_back(tok);
      }
    }
    if (static_cast<int>(parsed.positional.size()) != verb->positional_count) {
      throw UsageError("'" + verb->name + "' expects " +
                       std::to_string(verb->positional_count) + " positional argument(s)");
    }

    Report rep;
    const int code = verb->handler(parsed, rep);
    rep.render(out, parsed.json);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace kolmo::cli
