#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kolab/oracle.hpp"
#include "kolab/params.hpp"
#include "kolab/reduction.hpp"

namespace kolab {

// Flat key=value configuration shared by every subcommand. Unknown keys are
// rejected; serialize() lists every key in sorted order.
struct RunConfig {
  SchemeParams params;
  OracleMode mode = OracleMode::Structural;
  std::uint64_t m = 200;
  std::uint64_t seed = 1;
  double threshold = 0.5;
  KFilter k_filter = KFilter::All;
  std::string cache_dir = ".kolab-cache";
  unsigned threads = 1;

  void set(std::string_view key, std::string_view value);
  // "key=value" assignment as accepted by --set.
  void assign(std::string_view assignment);
  std::string get(std::string_view key) const;

  // Lines of key=value; blank lines and '#' comments are ignored.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);
  std::string serialize() const;
  std::uint64_t hash() const;

  ReductionConfig reduction() const;
  void validate() const;

  static const std::vector<std::string>& keys();

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace kolab
