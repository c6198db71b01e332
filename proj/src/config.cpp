#include "kolab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kolab/error.hpp"

namespace kolab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error("config key " + std::string(key) + " expects a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error("config key " + std::string(key) + " expects a number, got '" + std::string(value) + "'");
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> kKeys = {
      "D",         "G",        "cache_dir", "case1_rule", "enum_bound", "exec_budget", "halt_budget", "k_filter",
      "m",         "max_output", "mode",    "pad",        "seed",       "slack",       "threads",     "threshold"};
  return kKeys;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "D") params.D = to_u64(key, value);
  else if (key == "G") params.G = to_u64(key, value);
  else if (key == "pad") params.pad = to_u64(key, value);
  else if (key == "slack") params.slack = to_u64(key, value);
  else if (key == "exec_budget") params.budgets.exec_budget = to_u64(key, value);
  else if (key == "halt_budget") params.budgets.halt_budget = to_u64(key, value);
  else if (key == "max_output") params.budgets.max_output = to_u64(key, value);
  else if (key == "enum_bound") params.enum_bound = to_u64(key, value);
  else if (key == "case1_rule") params.case1_rule = parse_case1_rule(value);
  else if (key == "mode") mode = parse_oracle_mode(value);
  else if (key == "m") m = to_u64(key, value);
  else if (key == "seed") seed = to_u64(key, value);
  else if (key == "threshold") threshold = to_double(key, value);
  else if (key == "k_filter") k_filter = parse_k_filter(value);
  else if (key == "cache_dir") cache_dir = std::string(value);
  else if (key == "threads") threads = static_cast<unsigned>(to_u64(key, value));
  else throw Error("unknown config key '" + std::string(key) + "'");
}

void RunConfig::assign(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw Error("expected key=value, got '" + std::string(assignment) + "'");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::string RunConfig::get(std::string_view key) const {
  if (key == "D") return std::to_string(params.D);
  if (key == "G") return std::to_string(params.G);
  if (key == "pad") return std::to_string(params.pad);
  if (key == "slack") return std::to_string(params.slack);
  if (key == "exec_budget") return std::to_string(params.budgets.exec_budget);
  if (key == "halt_budget") return std::to_string(params.budgets.halt_budget);
  if (key == "max_output") return std::to_string(params.budgets.max_output);
  if (key == "enum_bound") return std::to_string(params.enum_bound);
  if (key == "case1_rule") return std::string(to_string(params.case1_rule));
  if (key == "mode") return std::string(to_string(mode));
  if (key == "m") return std::to_string(m);
  if (key == "seed") return std::to_string(seed);
  if (key == "threshold") return format_double(threshold);
  if (key == "k_filter") return std::string(to_string(k_filter));
  if (key == "cache_dir") return cache_dir;
  if (key == "threads") return std::to_string(threads);
  throw Error("unknown config key '" + std::string(key) + "'");
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    cfg.assign(body);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& key : keys()) out += key + "=" + get(key) + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return fnv1a64(serialize()); }

ReductionConfig RunConfig::reduction() const {
  ReductionConfig cfg;
  cfg.m = m;
  cfg.seed = seed;
  cfg.threshold = threshold;
  cfg.k_filter = k_filter;
  cfg.mode = mode;
  cfg.params = params;
  cfg.threads = threads;
  return cfg;
}

void RunConfig::validate() const { reduction().validate(); }

}  // namespace kolab
