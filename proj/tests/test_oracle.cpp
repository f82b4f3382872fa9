#include <doctest.h>

#include <sstream>

#include "kolmo/errors.hpp"
#include "kolmo/oracle.hpp"

using namespace kolmo;

namespace {

DescriptionSystem from_text(const std::string& text) {
  std::istringstream in(text);
  return DescriptionSystem::load(in);
}

SystemEntry entry(const std::string& p, const std::string& c, const std::string& o) {
  SystemEntry e;
  if (p != ".") e.program = BitString(p);
  if (c != ".") e.condition = BitString(c);
  if (o != ".") e.output = BitString(o);
  return e;
}

}  // namespace

TEST_CASE("system file parsing") {
  const DescriptionSystem one = from_text("0 | . -> 101\n");
  CHECK(one.entries().size() == 1);
  CHECK(one.complexity(BitString("101")).value() == 1);

  CHECK(from_text("").entries().empty());
  CHECK(from_text("# only a comment\n\n").entries().empty());

  CHECK_THROWS_AS(from_text("0 | . -> 101\n0 | . -> 11\n"), DuplicateKeyError);
  CHECK_THROWS_AS(from_text("0 . -> 1\n"), ParseError);
  CHECK_THROWS_AS(from_text("2 | . -> 1\n"), ParseError);
}

TEST_CASE("system files round-trip") {
  const DescriptionSystem sys = from_text("  0 |.->  101 \n. | 1 -> 0\n# c\n11|.->1\n");
  std::ostringstream out;
  sys.save(out);
  const DescriptionSystem again = from_text(out.str());
  REQUIRE(again.entries().size() == sys.entries().size());
  std::ostringstream out2;
  again.save(out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("complexity is the shortest matching program") {
  const DescriptionSystem sys = from_text("0 | . -> 101\n");
  CHECK(sys.complexity(BitString("101")).value() == 1);
  CHECK(sys.complexity(BitString("11")).is_bot());

  const DescriptionSystem two = from_text("0 | . -> 1\n10 | . -> 1\n");
  CHECK(two.complexity(BitString("1")).value() == 1);

  // bot compares above every natural
  CHECK(ComplexityValue::bot() > ComplexityValue::of(1000));
  CHECK(ComplexityValue::bot() >= 12345);
}

TEST_CASE("dependency per the definition") {
  // C(x)=2, C(x|y)=1, C(y)=2, C(y|x)=2 -> dep = 1
  const DescriptionSystem sys = DescriptionSystem::from_entries({
      entry("00", ".", "0011"),
      entry("1", "1100", "0011"),
      entry("01", ".", "1100"),
      entry("10", "0011", "1100"),
  });
  const auto rep = dependency(sys, BitString("0011"), BitString("1100"));
  CHECK(rep.c_x.value() == 2);
  CHECK(rep.c_x_given_y.value() == 1);
  CHECK(rep.c_y.value() == 2);
  CHECK(rep.c_y_given_x.value() == 2);
  CHECK(rep.dep == 1);

  // x = y with C(x) = 3, C(x|x) = 0 -> dep = 3
  const DescriptionSystem self = DescriptionSystem::from_entries({
      entry("010", ".", "111"),
      entry(".", "111", "111"),
  });
  CHECK(dependency(self, BitString("111"), BitString("111")).dep == 3);

  const DescriptionSystem missing = DescriptionSystem::from_entries({
      entry("0", ".", "1"),
  });
  CHECK_THROWS_AS(dependency(missing, BitString("0"), BitString("1")),
                  UndefinedComplexityError);
}

TEST_CASE("dependency is symmetric") {
  const DescriptionSystem lit = literal_system(3, 3);
  for (const BitString& a : all_strings(2)) {
    for (const BitString& b : all_strings(3)) {
      CHECK(dependency(lit, a, b).dep == dependency(lit, b, a).dep);
    }
  }
}

TEST_CASE("profile sets") {
  // at most 2^(t+1) - 1 strings can appear at threshold t
  const DescriptionSystem sys = from_text(
      ". | . -> 00\n"
      "0 | . -> 01\n"
      "1 | . -> 10\n"
      "00 | . -> 11\n");
  CHECK(sys.profile_set(1, BitString(), 2).size() == 3);
  CHECK(sys.profile_set(2, BitString(), 2).size() == 4);
  CHECK(sys.profile_set(-1, BitString(), 2).empty());
  CHECK(DescriptionSystem().profile_set(3, BitString(), 2).empty());

  // filters by length
  const DescriptionSystem mixed = from_text("0 | . -> 1\n1 | . -> 11\n");
  CHECK(mixed.profile_set(1, BitString(), 1).size() == 1);
  CHECK(mixed.profile_set(1, BitString(), 2).size() == 1);

  // five distinct outputs under programs of length <= 2: exactly those five
  const DescriptionSystem five = from_text(
      ". | . -> 000\n0 | . -> 001\n1 | . -> 010\n00 | . -> 011\n01 | . -> 100\n");
  CHECK(five.profile_set(2, BitString(), 3).size() == 5);
}

TEST_CASE("profile-set counting bound and monotonicity on random systems") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DescriptionSystem sys = random_system(5, seed);
    for (int len : {0, 1, 3, 5}) {
      std::size_t prev = 0;
      for (std::int64_t t = 0; t <= 8; ++t) {
        const auto set = sys.profile_set(t, BitString(), len);
        REQUIRE(set.size() <= (std::size_t{1} << (t + 1)) - 1);
        REQUIRE(set.size() >= prev);  // monotone in t
        prev = set.size();
      }
    }
  }
}

TEST_CASE("random system generator is deterministic and total") {
  const DescriptionSystem a = random_system(4, 42);
  const DescriptionSystem b = random_system(4, 42);
  REQUIRE(a.entries().size() == b.entries().size());
  CHECK(a.entries().size() == (std::size_t{1} << 5) - 1);  // every string gets a program
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    CHECK(a.entries()[i].program == b.entries()[i].program);
    CHECK(a.entries()[i].output == b.entries()[i].output);
  }
  std::ostringstream ta, tc;
  a.save(ta);
  random_system(4, 43).save(tc);
  CHECK(ta.str() != tc.str());
}

TEST_CASE("literal system semantics") {
  const DescriptionSystem lit = literal_system(3, 2);
  CHECK(lit.complexity(BitString()).value() == 0);
  CHECK(lit.complexity(BitString("101")).value() == 3);
  CHECK(lit.complexity(BitString("01"), BitString("01")).value() == 0);
  CHECK(lit.complexity(BitString("101"), BitString("01")).value() == 3);
  CHECK(lit.complexity(BitString(), BitString("01")).is_bot());
}

TEST_CASE("symmetry-of-information slacks") {
  // all complexities zero: slacks are exactly the additive terms, i.e. zero
  const DescriptionSystem eps = DescriptionSystem::from_entries({entry(".", ".", ".")});
  const SoiSlacks zero = soi_slack(eps, BitString(), BitString());
  CHECK(zero.a == doctest::Approx(0.0));
  CHECK(zero.b == doctest::Approx(0.0));
  CHECK(zero.c == doctest::Approx(0.0));

  // a system satisfying (a)-(c): the literal one at x = "0", y = "1"
  const DescriptionSystem lit = literal_system(2, 1);
  const SoiSlacks ok = soi_slack(lit, BitString("0"), BitString("1"));
  CHECK(ok.a >= 0.0);
  CHECK(ok.b >= 0.0);
  CHECK(ok.c >= 0.0);

  // violating (a): make C(xy) huge relative to C(y) + C(x|y)
  const DescriptionSystem bad = DescriptionSystem::from_entries({
      entry("0", ".", "0"),
      entry("1", ".", "1"),
      entry(".", "1", "0"),
      entry("1", "0", "1"),
      entry("111111", ".", "01"),
  });
  CHECK(soi_slack(bad, BitString("0"), BitString("1")).a < 0.0);
}

TEST_CASE("identical files load to identical systems") {
  const std::string text = "0 | . -> 11\n1 | 0 -> 00\n. | . -> 1\n";
  const DescriptionSystem a = from_text(text), b = from_text(text);
  for (int len : {0, 1, 2}) {
    for (std::int64_t t = 0; t <= 3; ++t) {
      CHECK(a.profile_set(t, BitString(), len) == b.profile_set(t, BitString(), len));
    }
  }
  CHECK(a.complexity(BitString("11")).value() == b.complexity(BitString("11")).value());
}
