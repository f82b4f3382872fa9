#include <doctest.h>

#include "kolmo/bitstring.hpp"
#include "kolmo/errors.hpp"

using namespace kolmo;

TEST_CASE("pair encoding matches the worked examples") {
  CHECK(encode_pair(BitString("1"), BitString("01")).str() == "110001101");
  CHECK(encode_pair(BitString(), BitString()).str() == "0001");
  CHECK(encode_pair(BitString("0"), BitString("1")).str() == "110101");
}

TEST_CASE("pair decoding inverts the examples") {
  auto [a, b] = decode_pair(BitString("110001101"));
  CHECK(a.str() == "1");
  CHECK(b.str() == "01");
  auto [c, d] = decode_pair(BitString("0001"));
  CHECK(c.empty());
  CHECK(d.empty());
  CHECK_THROWS_AS(decode_pair(BitString("11")), MalformedEncodingError);
  CHECK_THROWS_AS(decode_pair(BitString("10")), MalformedEncodingError);
  CHECK_THROWS_AS(decode_pair(BitString("1101")), MalformedEncodingError);
}

TEST_CASE("roundtrip and length formula over all short pairs") {
  for (int l1 = 0; l1 <= 8; ++l1) {
    for (int l2 = 0; l2 <= 8; ++l2) {
      for (const BitString& x1 : all_strings(l1)) {
        for (const BitString& x2 : all_strings(l2)) {
          const BitString s = encode_pair(x1, x2);
          const int bin_len = BitString::bin(static_cast<std::uint64_t>(l2)).length();
          REQUIRE(s.length() == l1 + l2 + 2 * bin_len + 2);
          const auto [a, b] = decode_pair(s);
          REQUIRE(a == x1);
          REQUIRE(b == x2);
        }
      }
    }
  }
}

TEST_CASE("index and from_index are inverse") {
  for (int len = 0; len <= 10; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); v += (len > 6 ? 7 : 1)) {
      CHECK(BitString::from_index(v, len).index() == v);
    }
  }
}
