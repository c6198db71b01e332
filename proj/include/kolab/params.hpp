#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "kolab/machine.hpp"

namespace kolab {

// How case 1 of U treats outputs of the form y' 0^pad with |y'| specific.
//   Strict:  defined iff |d'| < |y| - G
//   Literal: defined iff |y| > |d'| - G
enum class Case1Rule { Strict, Literal };

std::string_view to_string(Case1Rule rule) noexcept;
Case1Rule parse_case1_rule(std::string_view text);

// Every construction constant of U. Hashed into caches and reports.
struct SchemeParams {
  std::uint64_t D = 4;       // case prefix length
  std::uint64_t G = 8;       // padding gap tolerated by case 1
  std::uint64_t pad = 9;     // zero run appended to case-3 outputs
  std::uint64_t slack = 5;   // k - |d''| in case 3
  MachineBudgets budgets;
  std::uint64_t enum_bound = 18;
  Case1Rule case1_rule = Case1Rule::Strict;

  // pad and slack odd, D >= 2, G >= 3, budgets positive, enum_bound <= 26.
  void validate() const;
  // Stable "key=value;..." rendering that the hash is computed over.
  std::string canonical() const;
  std::uint64_t hash() const;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

inline constexpr std::uint64_t kMaxEnumBound = 26;

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view text) noexcept;
// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace kolab
