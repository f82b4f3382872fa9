#include "kolmo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kolmo/errors.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

BitString parse_field(const std::string& tok, int line_no) {
  if (tok == ".") return BitString();
  if (tok.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": empty field (use '.')");
  }
  for (char c : tok) {
    if (c != '0' && c != '1') {
      throw ParseError("line " + std::to_string(line_no) + ": field is not over {0,1}");
    }
  }
  return BitString(tok);
}

std::string field_text(const BitString& b) { return b.empty() ? "." : b.str(); }

// log2 that treats values <= 1 as contributing nothing; keeps the
// slack formulas total at zero complexities.
double safe_log2(double v) { return v <= 1.0 ? 0.0 : std::log2(v); }

}  // namespace

std::int64_t ComplexityValue::value() const {
  if (is_bot()) throw UndefinedComplexityError("complexity is bot");
  return v_;
}

DescriptionSystem DescriptionSystem::load(std::istream& in, std::string name) {
  std::vector<SystemEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto bar = t.find('|');
    const auto arrow = t.find("->");
    if (bar == std::string::npos || arrow == std::string::npos || arrow < bar) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected `<program> | <condition> -> <output>`");
    }
    SystemEntry e;
    e.program = parse_field(trim(t.substr(0, bar)), line_no);
    e.condition = parse_field(trim(t.substr(bar + 1, arrow - bar - 1)), line_no);
    e.output = parse_field(trim(t.substr(arrow + 2)), line_no);
    entries.push_back(std::move(e));
  }
  return from_entries(std::move(entries), std::move(name));
}

DescriptionSystem DescriptionSystem::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file: " + path);
  auto base = path.find_last_of('/');
  return load(in, base == std::string::npos ? path : path.substr(base + 1));
}

DescriptionSystem DescriptionSystem::from_entries(std::vector<SystemEntry> entries,
                                                  std::string name) {
  DescriptionSystem sys;
  sys.name_ = std::move(name);
  std::sort(entries.begin(), entries.end(), [](const SystemEntry& a, const SystemEntry& b) {
    if (a.condition != b.condition) return a.condition < b.condition;
    return a.program < b.program;
  });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].program == entries[i + 1].program &&
        entries[i].condition == entries[i + 1].condition) {
      throw DuplicateKeyError("duplicate (program, condition): (" +
                              field_text(entries[i].program) + ", " +
                              field_text(entries[i].condition) + ")");
    }
  }
  for (const SystemEntry& e : entries) {
    auto& by_output = sys.shortest_[e.condition];
    auto [it, inserted] = by_output.try_emplace(e.output, e.program.length());
    if (!inserted) it->second = std::min<std::int64_t>(it->second, e.program.length());
  }
  sys.entries_ = std::move(entries);
  return sys;
}

ComplexityValue DescriptionSystem::complexity(const BitString& x,
                                              const BitString& cond) const {
  const auto cit = shortest_.find(cond);
  if (cit == shortest_.end()) return ComplexityValue::bot();
  const auto oit = cit->second.find(x);
  if (oit == cit->second.end()) return ComplexityValue::bot();
  return ComplexityValue::of(oit->second);
}

std::vector<BitString> DescriptionSystem::profile_set(std::int64_t t,
                                                      const BitString& cond,
                                                      int len) const {
  std::vector<BitString> out;
  if (t < 0) return out;
  const auto cit = shortest_.find(cond);
  if (cit == shortest_.end()) return out;
  for (const auto& [output, plen] : cit->second) {
    if (output.length() == len && plen <= t) out.push_back(output);
  }
  return out;  // map iteration is already sorted
}

void DescriptionSystem::save(std::ostream& out) const {
  for (const SystemEntry& e : entries_) {
    out << field_text(e.program) << " | " << field_text(e.condition) << " -> "
        << field_text(e.output) << "\n";
  }
}

namespace {

ComplexityValue require_finite(const ComplexityValue& v, const char* what) {
  if (v.is_bot()) {
    throw UndefinedComplexityError(std::string("undefined complexity: ") + what);
  }
  return v;
}

}  // namespace

DependencyReport dependency(const DescriptionSystem& sys, const BitString& x,
                            const BitString& y) {
  DependencyReport r;
  r.c_x = require_finite(sys.complexity(x), "C(x)");
  r.c_y = require_finite(sys.complexity(y), "C(y)");
  r.c_x_given_y = require_finite(sys.complexity(x, y), "C(x|y)");
  r.c_y_given_x = require_finite(sys.complexity(y, x), "C(y|x)");
  r.dep = std::max(r.c_x.value() - r.c_x_given_y.value(),
                   r.c_y.value() - r.c_y_given_x.value());
  return r;
}

SoiSlacks soi_slack(const DescriptionSystem& sys, const BitString& x,
                    const BitString& y) {
  const double cx = static_cast<double>(require_finite(sys.complexity(x), "C(x)").value());
  const double cy = static_cast<double>(require_finite(sys.complexity(y), "C(y)").value());
  const double cxy =
      static_cast<double>(require_finite(sys.complexity(x + y), "C(xy)").value());
  const double cx_y =
      static_cast<double>(require_finite(sys.complexity(x, y), "C(x|y)").value());
  const double cy_x =
      static_cast<double>(require_finite(sys.complexity(y, x), "C(y|x)").value());

  SoiSlacks s;
  // (a) C(xy) <= C(y) + C(x|y) + 2 log C(y)
  s.a = (cy + cx_y + 2.0 * safe_log2(cy)) - cxy;
  // (b) C(xy) >= C(x) + C(y|x) - 2 log C(xy) - 4 log log C(xy)
  s.b = cxy - (cx + cy_x - 2.0 * safe_log2(cxy) - 4.0 * safe_log2(safe_log2(cxy)));
  // (c) C(y) - C(y|x) >= C(x) - C(x|y) - 5 log n
  const double n = static_cast<double>(std::max(x.length(), y.length()));
  s.c = (cy - cy_x) - (cx - cx_y - 5.0 * safe_log2(n));
  return s;
}

DescriptionSystem random_system(int max_len, std::uint64_t seed) {
  if (max_len < 0 || max_len > 16) throw SizeLimitError("random_system max_len out of range");
  Rng rng(seed);
  // Strings of length <= max_len in a seeded shuffle.
  std::vector<BitString> strings;
  for (int len = 0; len <= max_len; ++len) {
    for (const BitString& s : all_strings(len)) strings.push_back(s);
  }
  for (std::size_t i = strings.size(); i > 1; --i) {
    std::swap(strings[i - 1], strings[rng.below(i)]);
  }
  // Each string draws a desired program length; the next free program at
  // or above that length is assigned (lengths can overflow upward, and
  // lengths <= max_len + 1 always suffice for 2^(max_len+1)-1 strings).
  std::vector<std::uint64_t> used(static_cast<std::size_t>(max_len) + 2, 0);
  std::vector<SystemEntry> entries;
  for (const BitString& s : strings) {
    int want = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1));
    while (used[static_cast<std::size_t>(want)] >=
           (std::uint64_t{1} << static_cast<unsigned>(want))) {
      ++want;
    }
    SystemEntry e;
    e.program = BitString::from_index(used[static_cast<std::size_t>(want)]++, want);
    e.output = s;
    entries.push_back(std::move(e));
  }
  return DescriptionSystem::from_entries(std::move(entries),
                                         "random-" + std::to_string(seed));
}

DescriptionSystem literal_system(int max_len, int cond_max_len) {
  if (max_len < 0 || max_len > 12 || cond_max_len < -1 || cond_max_len > 12) {
    throw SizeLimitError("literal_system lengths out of range");
  }
  std::vector<SystemEntry> entries;
  std::vector<BitString> conds;
  conds.emplace_back();
  for (int len = 1; len <= cond_max_len; ++len) {
    for (const BitString& c : all_strings(len)) conds.push_back(c);
  }
  // Echo machine: M(p, c) = c when p is empty, else p. Under the empty
  // condition this is the identity on programs, so C(x) = |x| and C(e) = 0.
  for (const BitString& cond : conds) {
    if (!cond.empty()) {
      SystemEntry echo;
      echo.condition = cond;
      echo.output = cond;
      entries.push_back(std::move(echo));
    }
    for (int len = cond.empty() ? 0 : 1; len <= max_len; ++len) {
      for (const BitString& x : all_strings(len)) {
        SystemEntry e;
        e.program = x;
        e.condition = cond;
        e.output = x;
        entries.push_back(std::move(e));
      }
    }
  }
  return DescriptionSystem::from_entries(std::move(entries), "literal");
}

}  // namespace kolmo
