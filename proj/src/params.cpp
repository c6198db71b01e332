#include "kolab/params.hpp"

#include <cstdio>

#include "kolab/error.hpp"

namespace kolab {

std::string_view to_string(Case1Rule rule) noexcept {
  return rule == Case1Rule::Strict ? "strict" : "literal";
}

Case1Rule parse_case1_rule(std::string_view text) {
  if (text == "strict") return Case1Rule::Strict;
  if (text == "literal") return Case1Rule::Literal;
  throw Error("case1_rule must be strict or literal, got '" + std::string(text) + "'");
}

void SchemeParams::validate() const {
  if (pad % 2 == 0) throw Error("pad must be odd");
  if (slack % 2 == 0) throw Error("slack must be odd");
  if (D < 2) throw Error("D must be at least 2");
  if (G < 3) throw Error("G must be at least 3");
  if (enum_bound > kMaxEnumBound) throw Error("enum_bound above 26");
  budgets.validate();
}

std::string SchemeParams::canonical() const {
  std::string out;
  auto add = [&out](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append(";");
  };
  add("D", std::to_string(D));
  add("G", std::to_string(G));
  add("pad", std::to_string(pad));
  add("slack", std::to_string(slack));
  add("exec_budget", std::to_string(budgets.exec_budget));
  add("halt_budget", std::to_string(budgets.halt_budget));
  add("max_output", std::to_string(budgets.max_output));
  add("enum_bound", std::to_string(enum_bound));
  add("case1_rule", std::string(to_string(case1_rule)));
  return out;
}

std::uint64_t SchemeParams::hash() const { return fnv1a64(canonical()); }

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace kolab
