#include "doctest.h"
#include "kolab/decompressor.hpp"
#include "kolab/error.hpp"
#include "naive.hpp"

using kolab::BitStr;
using kolab::MachineId;
using kolab::SchemeParams;

namespace {

SchemeParams small_scheme() {
  SchemeParams p;
  p.pad = 1;
  p.slack = 1;
  return p;
}

std::optional<std::string> u_str(const std::string& d, const SchemeParams& params) {
  const auto out = kolab::u_decode(BitStr::parse(d), params);
  if (!out.halted()) return std::nullopt;
  return out.output.str();
}

const std::string kA = "101100111000101011110000110101";

}  // namespace

TEST_CASE("U case examples") {
  const SchemeParams params;
  CHECK(u_str("11110101", params) == "101");
  CHECK(u_str("111010", params) == "0");
  CHECK(u_str("11111", params) == std::nullopt);
  CHECK(u_str("", params) == std::nullopt);
}

TEST_CASE("case 3 example") {
  const SchemeParams params = small_scheme();
  const std::string d = "0" + kA + "0100";
  const auto parse = kolab::parse_case3(BitStr::parse(d), params);
  REQUIRE(parse);
  CHECK(parse->p == 7);
  CHECK(parse->k == 5);
  CHECK(parse->n == 6);
  CHECK(parse->l == 4);
  CHECK(parse->d2.str() == "0100");
  CHECK(u_str(d, params) == kA + "00000" + "0");
  CHECK(u_str(d, params)->size() == 36);
  // k = 3 < slack = 5 at default parameters.
  CHECK_FALSE(kolab::parse_case3(BitStr::parse(d), SchemeParams{}).has_value());
}

TEST_CASE("U agrees with the string reference and cases are disjoint") {
  for (const auto& params : {SchemeParams{}, small_scheme()}) {
    const naive::Scheme scheme{params.D, params.G, params.pad, params.slack};
    const std::string c1 = std::string(params.D, '1') + "0";
    const std::string c2 = std::string(params.D - 1, '1') + "0";
    for (std::size_t len = 0; len <= 12; ++len) {
      for (const auto& d : naive::all_strings(len)) {
        const int matches = (d.rfind(c1, 0) == 0) + (d.rfind(c2, 0) == 0) + (d.rfind("0", 0) == 0);
        REQUIRE(matches <= 1);
        const auto got = u_str(d, params);
        REQUIRE(got == naive::u(d, scheme));
      }
    }
  }
}

TEST_CASE("case 3 outputs have even length") {
  const SchemeParams params = small_scheme();
  const naive::Scheme scheme{params.D, params.G, params.pad, params.slack};
  int fired = 0;
  for (std::size_t len = 1; len <= 16; ++len) {
    for (const auto& d : naive::all_strings(len)) {
      if (d[0] != '0') continue;
      const auto got = u_str(d, params);
      if (!got) continue;
      ++fired;
      REQUIRE(got->size() % 2 == 0);
      REQUIRE(got == naive::u(d, scheme));
    }
  }
  CHECK(fired > 0);
}

TEST_CASE("exception form and case 1 rules") {
  SchemeParams params;
  // |y'| = 15 is specific (5 * 3).
  const BitStr y = BitStr::ones(15) + BitStr::zeros(9);
  CHECK(kolab::is_exception_form(y, params));
  CHECK_FALSE(kolab::is_exception_form(BitStr::ones(9) + BitStr::zeros(9), params));
  CHECK_FALSE(kolab::is_exception_form(BitStr::ones(15) + BitStr::zeros(8), params));
  // Strict: |d'| < |y| - G = 16.
  CHECK(kolab::case1_admits(15, y, params));
  CHECK_FALSE(kolab::case1_admits(16, y, params));
  CHECK(kolab::case1_admits(100, BitStr::ones(3), params));
  params.case1_rule = kolab::Case1Rule::Literal;
  // Literal: |y| > |d'| - G, i.e. |d'| < 32.
  CHECK(kolab::case1_admits(31, y, params));
  CHECK_FALSE(kolab::case1_admits(32, y, params));
}

TEST_CASE("W examples and parity solver") {
  const SchemeParams params;
  const auto w = kolab::build_table(MachineId::W, BitStr{}, 18, params);
  CHECK(kolab::parity_solve_halting(BitStr::parse("000"), w));
  CHECK_FALSE(kolab::parity_solve_halting(BitStr::parse("111"), w));
  std::uint64_t decided = 0, halting = 0;
  for (std::size_t len = 0; len <= 10; ++len) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << len); ++c) {
      const BitStr x = BitStr::from_uint(c, len);
      if (!w.complexity_of(x)) continue;
      const bool h = kolab::in_halting(x, params.budgets);
      REQUIRE(kolab::parity_solve_halting(x, w) == h);
      ++decided;
      halting += h;
    }
  }
  CHECK(decided > 0);
  CHECK(halting > 0);
  CHECK(halting < decided);
  const auto tiny = kolab::build_table(MachineId::W, BitStr{}, 4, params);
  CHECK_THROWS_AS(kolab::parity_solve_halting(BitStr::ones(10), tiny), kolab::Error);
}

TEST_CASE("G calibration") {
  SchemeParams params;
  params.pad = 1;
  auto c = kolab::calibrate_g(params, 6);
  CHECK(c.worst_gap == -1);
  CHECK(c.g_star == 0);
  CHECK(c.witness.empty());
  CHECK(c.checked == 127);
  params.pad = 3;
  c = kolab::calibrate_g(params, 8);
  CHECK(c.worst_gap == -1);
  CHECK(c.g_star == 0);
  params.pad = 9;
  c = kolab::calibrate_g(params, 9);
  CHECK(c.worst_gap == -1);
  CHECK(c.g_star <= 8);
  CHECK(kolab::calibrate_g(params, 0).g_star == 0);
  CHECK_THROWS_AS(kolab::calibrate_g(params, 10), kolab::Error);
}
