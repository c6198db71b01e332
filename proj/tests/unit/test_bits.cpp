#include "doctest.h"
#include "kolab/bits.hpp"
#include "kolab/error.hpp"
#include "kolab/gf2.hpp"
#include "naive.hpp"

using kolab::BitStr;

TEST_CASE("encode_nat") {
  CHECK(kolab::encode_nat(0).empty());
  CHECK(kolab::encode_nat(6).str() == "110");
  CHECK(kolab::encode_nat(17).str() == "10001");
}

TEST_CASE("encode_nat round trip without leading zeros") {
  for (std::uint64_t v = 0; v < (1U << 20); ++v) {
    const BitStr e = kolab::encode_nat(v);
    REQUIRE(kolab::decode_nat(e) == v);
    if (!e.empty()) REQUIRE(e[0]);
    REQUIRE(e.str() == naive::binary(v));
  }
}

TEST_CASE("decode_nat overflow") {
  CHECK_FALSE(kolab::try_decode_nat(BitStr::ones(65)).has_value());
  CHECK(kolab::try_decode_nat(BitStr::zeros(100)).value() == 0);
  CHECK_THROWS_AS(kolab::decode_nat(BitStr::ones(70)), kolab::Error);
}

TEST_CASE("hex packing") {
  CHECK(kolab::to_hex(BitStr::parse("1011")) == "b:4");
  CHECK(kolab::to_hex(BitStr{}) == ":0");
  CHECK(kolab::to_hex(BitStr::parse("00000001")) == "01:8");
  CHECK(kolab::to_hex(BitStr::parse("1")) == "1:1");
  CHECK(kolab::parse_hex("b:4").str() == "1011");
  CHECK(kolab::parse_hex(":0").empty());
  CHECK(kolab::parse_hex("01:8").str() == "00000001");
}

TEST_CASE("hex errors") {
  CHECK_THROWS_AS(kolab::parse_hex("g:4"), kolab::Error);
  CHECK_THROWS_AS(kolab::parse_hex("ab:4"), kolab::Error);
  CHECK_THROWS_AS(kolab::parse_hex("f:3"), kolab::Error);
  CHECK_THROWS_AS(kolab::parse_hex("ff"), kolab::Error);
  CHECK_THROWS_AS(kolab::parse_hex("f:x"), kolab::Error);
  CHECK_THROWS_AS(BitStr::parse("0120"), kolab::Error);
}

TEST_CASE("hex round trip, exhaustive to 12 bits and randomized to 64") {
  for (std::size_t len = 0; len <= 12; ++len) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
      const BitStr x = BitStr::from_uint(code, len);
      REQUIRE(kolab::parse_hex(kolab::to_hex(x)) == x);
    }
  }
  kolab::SeededRng rng(42, 0);
  for (int i = 0; i < 5000; ++i) {
    const std::size_t len = 13 + rng.uniform(52);
    BitStr x = BitStr::zeros(len);
    for (std::size_t b = 0; b < len; ++b) x.set(b, rng.next_bit());
    REQUIRE(kolab::parse_bits_arg(kolab::to_hex(x)) == x);
  }
}

TEST_CASE("concatenation, slicing and ordering") {
  kolab::SeededRng rng(7, 1);
  for (int i = 0; i < 500; ++i) {
    std::string a(rng.uniform(150), '0'), b(rng.uniform(150), '0');
    for (auto& c : a) c = rng.next_bit() ? '1' : '0';
    for (auto& c : b) c = rng.next_bit() ? '1' : '0';
    const BitStr ab = BitStr::parse(a) + BitStr::parse(b);
    REQUIRE(ab.str() == a + b);
    const std::size_t pos = ab.empty() ? 0 : rng.uniform(ab.size());
    const std::size_t len = rng.uniform(ab.size() - pos + 1);
    REQUIRE(ab.substr(pos, len).str() == (a + b).substr(pos, len));
    BitStr popped = ab;
    if (!popped.empty()) {
      popped.pop_back();
      REQUIRE(popped == BitStr::parse((a + b).substr(0, a.size() + b.size() - 1)));
    }
  }
  CHECK(BitStr::parse("1") < BitStr::parse("00"));
  CHECK(BitStr::parse("01") < BitStr::parse("10"));
  CHECK(BitStr::parse("0110").ends_with_zeros(1));
  CHECK_FALSE(BitStr::parse("0110").ends_with_zeros(2));
  CHECK(BitStr{}.ends_with_zeros(0));
}
