#include <doctest.h>

#include <algorithm>
#include <set>

#include "kolmo/errors.hpp"
#include "kolmo/extractor.hpp"
#include "kolmo/oracle.hpp"
#include "kolmo/rng.hpp"
#include "kolmo/table.hpp"

using namespace kolmo;

namespace {

SystemEntry entry(const std::string& p, const std::string& c, const std::string& o) {
  SystemEntry e;
  if (p != ".") e.program = BitString(p);
  if (c != ".") e.condition = BitString(c);
  if (o != ".") e.output = BitString(o);
  return e;
}

// One zero-length program per condition v fixes A_v = {w_v} exactly; the
// unconditional entries pin the profile set.
DescriptionSystem column_system(int n, int m, const std::vector<std::uint64_t>& w_by_col,
                                const std::vector<std::uint64_t>& profile_rows) {
  std::vector<SystemEntry> entries;
  for (std::uint64_t v = 0; v < w_by_col.size(); ++v) {
    SystemEntry e;
    e.condition = BitString::from_index(v, n);
    e.output = BitString::from_index(w_by_col[v], m);
    entries.push_back(e);
  }
  // programs of length 1 (and one of length 0) keep everything within t1 = 1
  std::uint64_t next = 0;
  for (std::uint64_t u : profile_rows) {
    SystemEntry e;
    e.program = next == 0 ? BitString() : BitString::from_index(next - 1, 1);
    REQUIRE(next <= 2);
    ++next;
    e.output = BitString::from_index(u, n);
    entries.push_back(e);
  }
  return DescriptionSystem::from_entries(std::move(entries));
}

ColorTable mod4_table() {
  ColorTable t = ColorTable::zero(2, 2);
  for (std::uint64_t u = 0; u < 4; ++u) {
    for (std::uint64_t v = 0; v < 4; ++v) t.set(u, v, static_cast<std::uint32_t>((u + v) % 4));
  }
  return t;
}

}  // namespace

TEST_CASE("paper-mode parameter derivation") {
  const ExtractorParams p = derive_params(1024, 100, 10, 5, 30);
  CHECK(p.s == 70);
  CHECK(p.S == pow2_z(70));
  CHECK(p.t == 15);
  CHECK(p.D == pow2_z(25));

  CHECK_THROWS_AS(derive_params(1024, 100, 10, 5, 40), HypothesisViolationError);
  CHECK_THROWS_AS(derive_params(1024, 80, 10, 5, 10), HypothesisViolationError);

  // boundary: m exactly at s_n - 7 log2 n passes
  CHECK_NOTHROW(derive_params(1024, 100, 10, 5, 30));
}

TEST_CASE("desk-mode passthrough") {
  const ExtractorParams p = desk_params(4, 2, 3, 1, 2, mpz_class(4), mpz_class(16), 3);
  CHECK(p.mode == ExtractorParams::Mode::desk);
  CHECK(p.s == 2);
  CHECK(p.S == 4);
  CHECK(p.D == 16);
  CHECK(p.t == 3);
}

TEST_CASE("extraction is a table lookup") {
  const ColorTable zero = ColorTable::zero(2, 2);
  for (const BitString& x : all_strings(2)) {
    for (const BitString& y : all_strings(2)) {
      CHECK(extract(zero, x, y).str() == "00");
    }
  }
  CHECK(extract(mod4_table(), BitString("01"), BitString("10")).str() == "11");
  CHECK_THROWS_AS(extract(mod4_table(), BitString("0"), BitString("10")),
                  LengthMismatchError);
}

TEST_CASE("extraction depends only on its own cell") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    ColorTable t = random_table(2, 2, rng.next());
    const BitString x = BitString::from_index(rng.below(4), 2);
    const BitString y = BitString::from_index(rng.below(4), 2);
    const BitString before = extract(t, x, y);
    const std::uint64_t other = (x.index() * 4 + y.index() + 1 + rng.below(14)) % 16;
    t.cells[other] = static_cast<std::uint32_t>((t.cells[other] + 1) % 4);
    CHECK(extract(t, x, y) == before);
  }
}

TEST_CASE("padded profile uses the lexicographically smallest absent strings") {
  const DescriptionSystem sys = column_system(2, 2, {0, 0, 0, 0}, {2});
  const std::vector<BitString> padded = padded_profile(sys, 0, 2);
  REQUIRE(padded.size() == 2);
  CHECK(padded[0].str() == "00");  // smallest absent string
  CHECK(padded[1].str() == "10");  // the profile member
  CHECK_THROWS(padded_profile(sys, 2, 2));
}

TEST_CASE("bad columns worked examples") {
  // all A_v empty: no conditional entries at threshold
  const ColorTable t = mod4_table();
  const DescriptionSystem empty_sys = DescriptionSystem::from_entries({
      entry(".", ".", "00"),
      entry("0", ".", "01"),
  });
  CHECK(bad_columns(t, empty_sys, 1, 1).empty());

  // constant table, constant color in every A_v, threshold below |B1|:
  // every column is bad (m = 3, t = 2 keeps A_v nonempty and the
  // threshold at 2 with t1 = 1)
  const ColorTable constant = ColorTable::zero(2, 3);
  const DescriptionSystem sys = column_system(2, 3, {0, 0, 0, 0}, {0, 1, 2});
  const std::vector<std::uint64_t> bad = bad_columns(constant, sys, 1, 2);
  CHECK(bad == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("bad-column pigeonhole is exact in the strict regime") {
  // n=2, m=3, S=4, D=48: singleton family, bound floor(2*9*16/48) = 6,
  // threshold 2 at (t1, t) = (1, 2), and D > m^2 2^t = 36 strictly, so a
  // verified table admits at most S-1 bad columns. Bad columns do occur.
  Rng rng(4242);
  int verified = 0, nonvacuous = 0;
  while (verified < 60) {
    const ColorTable t = random_table(2, 3, rng.next());
    if (!verify_rainbow(t, 4, mpq_class(48), VerifyMode::decomposed).balanced) continue;
    ++verified;
    for (int adv = 0; adv < 4; ++adv) {
      std::vector<std::uint64_t> w(4), rows;
      for (std::uint64_t v = 0; v < 4; ++v) {
        // adversarial choice: the most frequent color among three rows
        std::vector<int> freq(8, 0);
        std::vector<std::uint64_t> candidate_rows;
        for (std::uint64_t u = 0; u < 4; ++u) {
          if (u != static_cast<std::uint64_t>(adv)) candidate_rows.push_back(u);
        }
        for (std::uint64_t u : candidate_rows) ++freq[t.at(u, v)];
        w[v] = static_cast<std::uint64_t>(
            std::max_element(freq.begin(), freq.end()) - freq.begin());
        rows = candidate_rows;
      }
      const DescriptionSystem sys = column_system(2, 3, w, rows);
      const std::vector<std::uint64_t> bad = bad_columns(t, sys, 1, 2);
      REQUIRE(bad.size() < 4);  // strictly fewer than S
      if (!bad.empty()) ++nonvacuous;
    }
  }
  CHECK(nonvacuous > 0);  // the law is not tested vacuously
}

TEST_CASE("serial and parallel bad-column scans agree") {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const ColorTable t = random_table(3, 2, rng.next());
    std::vector<std::uint64_t> w(8);
    for (auto& v : w) v = rng.below(4);
    const DescriptionSystem sys = column_system(3, 2, w, {0, 3, 5});
    CHECK(bad_columns(t, sys, 1, 2, Execution::serial) ==
          bad_columns(t, sys, 1, 2, Execution::parallel));
  }
}

TEST_CASE("audit verdicts and boundary behavior") {
  const ColorTable t = mod4_table();
  const BitString x("01"), y("10");
  const BitString z = extract(t, x, y);  // "11"
  REQUIRE(z.str() == "11");

  // hypothesis holds, C(z|x) and C(z|y) placed exactly at the target:
  // s_n = 2, alpha = 0, t = 1 => target m - t = 1
  const ExtractorParams p = desk_params(2, 2, 2, 0, 1, mpz_class(2), mpz_class(8), 1);
  const DescriptionSystem sys = DescriptionSystem::from_entries({
      entry("00", ".", "01"),   // C(x) = 2
      entry("01", ".", "10"),   // C(y) = 2
      entry("00", "10", "01"),  // C(x|y) = 2
      entry("00", "01", "10"),  // C(y|x) = 2
      entry("1", "01", "11"),   // C(z|x) = 1 = target
      entry("1", "10", "11"),   // C(z|y) = 1 = target
  });
  const AuditReport rep = audit_extraction(sys, t, x, y, p);
  CHECK(rep.hypothesis_i);
  CHECK(rep.hypothesis_ii);
  CHECK(rep.verdict1);  // >= passes at equality
  CHECK(rep.verdict2);
  CHECK(rep.target == 1);
  CHECK(rep.notes.empty());

  // push C(z|x) below the target: verdict1 flips
  const DescriptionSystem sys2 = DescriptionSystem::from_entries({
      entry("00", ".", "01"),
      entry("01", ".", "10"),
      entry("00", "10", "01"),
      entry("00", "01", "10"),
      entry(".", "01", "11"),  // C(z|x) = 0 < 1
      entry("1", "10", "11"),
  });
  const AuditReport rep2 = audit_extraction(sys2, t, x, y, p);
  CHECK_FALSE(rep2.verdict1);
  CHECK(rep2.verdict2);

  // failing hypothesis (i) still produces verdicts
  const ExtractorParams strict = desk_params(2, 2, 3, 0, 1, mpz_class(2), mpz_class(8), 1);
  const AuditReport rep3 = audit_extraction(sys, t, x, y, strict);
  CHECK_FALSE(rep3.hypothesis_i);
  CHECK(rep3.verdict1);

  // dependency above alpha fails clause (ii)
  const DescriptionSystem dep_sys = DescriptionSystem::from_entries({
      entry("00", ".", "01"),
      entry("01", ".", "10"),
      entry(".", "10", "01"),  // C(x|y) = 0: difference 2 > alpha = 0
      entry("00", "01", "10"),
  });
  const AuditReport rep4 = audit_extraction(dep_sys, t, x, y, p);
  CHECK_FALSE(rep4.hypothesis_ii);

  // undefined C(z|x) counts as above every target
  const DescriptionSystem no_z = DescriptionSystem::from_entries({
      entry("00", ".", "01"),
      entry("01", ".", "10"),
      entry("00", "10", "01"),
      entry("00", "01", "10"),
  });
  const AuditReport rep5 = audit_extraction(no_z, t, x, y, p);
  CHECK(rep5.cz_given_x.is_bot());
  CHECK(rep5.verdict1);

  // missing C(x) is an error
  const DescriptionSystem nothing;
  CHECK_THROWS_AS(audit_extraction(nothing, t, x, y, p), UndefinedComplexityError);

  // out-of-proof-range note at t >= C(x) + 2
  const ExtractorParams big_t = desk_params(2, 2, 2, 0, 1, mpz_class(2), mpz_class(8), 4);
  const AuditReport rep6 = audit_extraction(sys, t, x, y, big_t);
  REQUIRE(rep6.notes.size() == 2);
}
