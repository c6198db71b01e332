#include <cmath>

#include "doctest.h"
#include "kolab/error.hpp"
#include "kolab/gf2.hpp"
#include "naive.hpp"

using kolab::BitStr;
using kolab::Gf2Matrix;

namespace {

// Independent census: enumerates matrices as strings.
std::uint64_t census_by_strings(std::size_t n, std::size_t k, const std::string& b1, const std::string& b2) {
  std::uint64_t count = 0;
  for (const auto& a : naive::all_strings(n * k)) {
    if (naive::matvec(a, k, n, b1) == naive::matvec(a, k, n, b2)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("rng is deterministic per (seed, stream)") {
  kolab::SeededRng a(99, 3), b(99, 3), c(99, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto wa = a.next_word();
    REQUIRE(wa == b.next_word());
    differs = differs || wa != c.next_word();
  }
  CHECK(differs);
  // First word of SplitMix64 seeded as documented.
  kolab::SeededRng d(0, 0);
  const std::uint64_t state = kolab::mix64(0 ^ kolab::mix64(kolab::kGoldenGamma));
  CHECK(d.next_word() == kolab::mix64(state + kolab::kGoldenGamma));
}

TEST_CASE("sample_matrix") {
  kolab::SeededRng r1(5, kolab::matrix_stream(2, 0)), r2(5, kolab::matrix_stream(2, 0));
  CHECK(kolab::sample_matrix(2, 3, r1) == kolab::sample_matrix(2, 3, r2));
  kolab::SeededRng r3(5, 0);
  CHECK(kolab::sample_matrix(3, 4, r3).serialize().size() == 12);
  CHECK_THROWS_AS(kolab::sample_matrix(0, 3, r3), kolab::Error);

  // 1x1 entries: 10^4 draws within 3 sigma of 1/2 (sigma = 50).
  kolab::SeededRng r4(2024, 0);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += kolab::sample_matrix(1, 1, r4).at(0, 0);
  CHECK(std::abs(ones - 5000) <= 150);
}

TEST_CASE("matvec examples") {
  const auto a = Gf2Matrix::deserialize(BitStr::parse("1011"), 2, 2);
  CHECK(kolab::matvec(a, BitStr::parse("11")).str() == "10");
  const auto id = Gf2Matrix::deserialize(BitStr::parse("1001"), 2, 2);
  CHECK(kolab::matvec(id, BitStr::parse("01")).str() == "01");
  kolab::SeededRng rng(1, 1);
  const auto r = kolab::sample_matrix(5, 70, rng);
  CHECK(kolab::matvec(r, BitStr::zeros(70)) == BitStr::zeros(5));
  CHECK_THROWS_AS(kolab::matvec(a, BitStr::parse("1")), kolab::Error);
}

TEST_CASE("matvec is linear and matches the string reference") {
  kolab::SeededRng rng(11, 0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 1 + rng.uniform(20), n = 1 + rng.uniform(140);
    const auto a = kolab::sample_matrix(k, n, rng);
    BitStr y1 = BitStr::zeros(n), y2 = BitStr::zeros(n), sum = BitStr::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
      y1.set(i, rng.next_bit());
      y2.set(i, rng.next_bit());
      sum.set(i, y1[i] != y2[i]);
    }
    const BitStr f1 = kolab::matvec(a, y1), f2 = kolab::matvec(a, y2), fs = kolab::matvec(a, sum);
    for (std::size_t i = 0; i < k; ++i) REQUIRE(fs[i] == (f1[i] != f2[i]));
    REQUIRE(f1.str() == naive::matvec(a.serialize().str(), k, n, y1.str()));
  }
}

TEST_CASE("serialization round trip") {
  kolab::SeededRng rng(3, 3);
  for (std::size_t k = 1; k <= 8; ++k) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto a = kolab::sample_matrix(k, n, rng);
      const BitStr s = a.serialize();
      REQUIRE(s.size() == n * k);
      REQUIRE(Gf2Matrix::deserialize(s, k, n) == a);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) REQUIRE(s[r * n + c] == a.at(r, c));
      }
    }
  }
}

TEST_CASE("collision census examples") {
  auto check = [](std::size_t n, std::size_t k, const char* b1, const char* b2, std::uint64_t count,
                  std::uint64_t total) {
    const auto r = kolab::collision_census(n, k, BitStr::parse(b1), BitStr::parse(b2));
    CHECK(r.count == count);
    CHECK(r.total == total);
    CHECK(census_by_strings(n, k, b1, b2) == count);
  };
  check(2, 1, "10", "01", 2, 4);
  check(2, 2, "10", "01", 4, 16);
  check(3, 2, "100", "010", 16, 64);
  CHECK_THROWS_AS(kolab::collision_census(2, 1, BitStr::parse("10"), BitStr::parse("10")), kolab::Error);
  CHECK_THROWS_AS(kolab::collision_census(5, 4, BitStr::zeros(5), BitStr::ones(5)), kolab::Error);
}
