#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kolab/complexity.hpp"
#include "kolab/error.hpp"
#include "naive.hpp"

using kolab::BitStr;
using kolab::MachineId;
using kolab::SchemeParams;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("kolab-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_against(const kolab::ComplexityTable& table, const std::map<std::string, int>& reference) {
  REQUIRE(table.size() == reference.size());
  for (const auto& [y, c] : reference) {
    const auto got = table.complexity_of(BitStr::parse(y));
    REQUIRE(got.has_value());
    REQUIRE(*got == static_cast<std::uint32_t>(c));
  }
}

}  // namespace

TEST_CASE("small complexities") {
  const SchemeParams params;
  const auto v4 = kolab::build_table(MachineId::V, BitStr{}, 4, params);
  CHECK(v4.complexity_of(BitStr{}) == 2u);
  CHECK(v4.complexity_of(BitStr::parse("0")) == 2u);
  const auto vo3 = kolab::build_table(MachineId::VOpt, BitStr{}, 3, params);
  CHECK(vo3.complexity_of(BitStr::parse("0")) == 2u);
  const auto v8 = kolab::build_table(MachineId::V, BitStr{}, 8, params);
  CHECK_FALSE(v8.complexity_of(BitStr::zeros(30)).has_value());
}

TEST_CASE("tables match the string reference") {
  const SchemeParams params;
  check_against(kolab::build_table(MachineId::VOpt, BitStr{}, 12, params),
                naive::forward([](const std::string& d) { return naive::vopt(d, ""); }, 12));
  check_against(kolab::build_table(MachineId::V, BitStr::parse("110"), 12, params),
                naive::forward([](const std::string& d) { return naive::v(d, "110"); }, 12));
  check_against(kolab::build_table(MachineId::W, BitStr{}, 12, params),
                naive::forward([](const std::string& d) { return naive::w(d); }, 12));
  const naive::Scheme scheme;
  check_against(kolab::build_table(MachineId::U, BitStr{}, 12, params),
                naive::forward([&](const std::string& d) { return naive::u(d, scheme); }, 12));
}

TEST_CASE("V parity, lower bound and literal reach") {
  const SchemeParams params;
  const auto v = kolab::build_table(MachineId::V, BitStr{}, 14, params);
  const auto vopt = kolab::build_table(MachineId::VOpt, BitStr{}, 14, params);
  for (const auto& [y, c] : v.sorted_entries()) {
    REQUIRE(c % 2 == 0);
    const auto co = vopt.complexity_of(y);
    REQUIRE(co.has_value());
    REQUIRE(*co <= c);
  }
  // Literal mode reaches odd-length strings only: "1" x must itself be even.
  for (std::size_t len = 1; len <= 13; len += 2) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
      const auto c = v.complexity_of(BitStr::from_uint(code, len));
      REQUIRE(c.has_value());
      REQUIRE(*c <= len + 1);
    }
  }
  // An even-length string falls back to program mode, far above C_VOPT + 1.
  CHECK(vopt.complexity_of(BitStr::parse("00")) == 3u);
  CHECK(v.complexity_of(BitStr::parse("00")) == 12u);
  CHECK(v.complexity_of(BitStr::parse("0000")) == 14u);
}

TEST_CASE("witnesses are shortlex-least minimal descriptions") {
  const SchemeParams params;
  const auto table = kolab::build_table(MachineId::V, BitStr{}, 10, params);
  for (const auto& [y, c] : table.sorted_entries()) {
    const auto* entry = table.find(y);
    REQUIRE(entry != nullptr);
    REQUIRE(entry->witness.has_value());
    REQUIRE(entry->witness->size() == c);
    const auto out = kolab::run_machine(MachineId::V, *entry->witness, BitStr{}, params);
    REQUIRE(out.halted());
    REQUIRE(out.output == y);
  }
  CHECK(table.witness(BitStr{}, params).str() == "01");
}

TEST_CASE("C_W examples") {
  const SchemeParams params;
  const auto w = kolab::build_table(MachineId::W, BitStr{}, 12, params);
  const auto v = kolab::build_table(MachineId::V, BitStr{}, 12, params);
  CHECK(w.complexity_of(BitStr::parse("000")) == 5u);
  CHECK(v.complexity_of(BitStr::parse("000")) == 4u);
  CHECK(w.complexity_of(BitStr::parse("111")) == 6u);
  CHECK(v.complexity_of(BitStr::parse("111")) == 4u);
}

TEST_CASE("threaded builds are identical to serial builds") {
  const SchemeParams params;
  for (auto id : {MachineId::V, MachineId::U, MachineId::W}) {
    const auto a = kolab::build_table(id, BitStr{}, 13, params, 1);
    const auto b = kolab::build_table(id, BitStr{}, 13, params, 3);
    REQUIRE(a == b);
    REQUIRE(kolab::serialize_cache(a) == kolab::serialize_cache(b));
    for (const auto& [y, c] : a.sorted_entries()) REQUIRE(a.find(y)->witness == b.find(y)->witness);
  }
}

TEST_CASE("run counting") {
  const SchemeParams params;
  const auto t = kolab::build_table(MachineId::V, BitStr{}, 6, params);
  const auto& runs = t.runs_by_length();
  REQUIRE(runs.size() == 7);
  for (std::size_t len = 0; len <= 6; ++len) CHECK(runs[len] == (std::uint64_t{1} << len));
  CHECK(t.runs_below(3) == 1 + 2 + 4);
}

TEST_CASE("cache round trip") {
  const SchemeParams params;
  const auto dir = scratch_dir("cache");
  const auto table = kolab::build_table(MachineId::V, BitStr::parse("101"), 10, params);
  const auto path = dir / kolab::cache_file_name(MachineId::V, BitStr::parse("101"), 10, params);
  kolab::save_cache(table, path);
  const std::string first = slurp(path);
  kolab::save_cache(kolab::load_cache(path, params), path);
  CHECK(slurp(path) == first);
  const auto loaded = kolab::load_cache(path, params);
  CHECK(loaded == table);
  CHECK_FALSE(loaded.find(BitStr{})->witness.has_value());
  CHECK(loaded.witness(BitStr{}, params) == table.find(BitStr{})->witness.value());
  CHECK(first.rfind("KCACHE v1 machine=v cond=5:3 bound=10 params=" + kolab::hex64(params.hash()) + "\n", 0) == 0);

  SchemeParams other = params;
  other.G = 9;
  CHECK_THROWS_AS(kolab::load_cache(path, other), kolab::StaleCacheError);
  CHECK_THROWS_AS(kolab::parse_cache("KCACHE v2 junk\n", params), kolab::Error);

  const auto via_dir = kolab::cached_table(dir, MachineId::U, BitStr{}, 9, params);
  CHECK(std::filesystem::exists(dir / kolab::cache_file_name(MachineId::U, BitStr{}, 9, params)));
  CHECK(kolab::cached_table(dir, MachineId::U, BitStr{}, 9, params) == via_dir);
  std::filesystem::remove_all(dir);
}

TEST_CASE("machine names") {
  CHECK(kolab::parse_machine("vopt") == MachineId::VOpt);
  CHECK(kolab::parse_machine("u") == MachineId::U);
  CHECK(kolab::machine_name(MachineId::W) == "w");
  CHECK_THROWS_AS(kolab::parse_machine("x"), kolab::Error);
  CHECK_FALSE(kolab::takes_condition(MachineId::U));
  CHECK(kolab::takes_condition(MachineId::V));
}
