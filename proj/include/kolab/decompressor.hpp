#pragma once

#include <cstdint>
#include <optional>

#include "kolab/bits.hpp"
#include "kolab/complexity.hpp"
#include "kolab/gf2.hpp"
#include "kolab/params.hpp"

namespace kolab {

// Layout of a case-3 description d = 0 A d2 with |A d2| + slack = p k.
struct Case3Parse {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::uint64_t l = 0;
  std::uint64_t n = 0;
  Gf2Matrix a;
  BitStr d2;  // length k - slack
};

// nullopt when d is not a well-formed case-3 description (wrong prefix,
// |d'| + slack not specific, or k < slack).
std::optional<Case3Parse> parse_case3(const BitStr& d, const SchemeParams& params);

// y = y' 0^pad with |y'| specific: the outputs case 1 treats specially.
bool is_exception_form(const BitStr& y, const SchemeParams& params);

// Whether case 1 admits a description d' of V-length `desc_length` for y.
bool case1_admits(std::size_t desc_length, const BitStr& y, const SchemeParams& params);

// The three-case decompressor U:
//   1^D 0 d'      -> d'
//   1^(D-1) 0 d'  -> V(d'), refused for exception-form outputs that are
//                    not sufficiently compressed
//   0 d'          -> A (A y) 0^pad when d' = A d2 parses, V(d2 | n) = y,
//                    |y| = n and the first l bits of y are in H_T
ExecOutcome u_decode(const BitStr& d, const SchemeParams& params, RunCounter* counter = nullptr);

// Parity decompressor: 00 d' -> V(d'); 1 d' -> V(d') when that output is in H_T.
ExecOutcome w_decode(const BitStr& d, const MachineBudgets& budgets, RunCounter* counter = nullptr);

// Odd C_W(x) signals x in H_T. Throws when C_W(x) exceeds the table bound.
bool parity_solve_halting(const BitStr& x, const ComplexityTable& w_table);

struct GCalibration {
  std::uint64_t g_star = 0;      // smallest G making the implication hold
  std::int64_t worst_gap = 0;    // max over qualifying x of |x| + pad - C_V(x 0^pad)
  BitStr witness;                // shortlex-first x attaining worst_gap
  std::uint64_t checked = 0;     // strings with |x| <= max_len
  std::uint64_t qualifying = 0;  // those with C_V(x) >= |x| - D
  std::uint64_t params_hash = 0;
};

// Smallest G with: C_V(x) >= |x| - D  implies  C_V(x 0^pad) >= |x| + pad - G,
// for every |x| <= max_len. Needs max_len + pad <= enum_bound.
GCalibration calibrate_g(const SchemeParams& params, std::uint64_t max_len, const ComplexityTable& v_table);
GCalibration calibrate_g(const SchemeParams& params, std::uint64_t max_len);

}  // namespace kolab
