#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kolab/bits.hpp"
#include "kolab/machine.hpp"
#include "kolab/params.hpp"

namespace kolab {

enum class MachineId { VOpt, V, U, W };

std::string_view machine_name(MachineId id) noexcept;
MachineId parse_machine(std::string_view text);
// U and W take no condition.
bool takes_condition(MachineId id) noexcept;

// Counts base-machine runs (v_opt executions and halting checks).
struct RunCounter {
  std::uint64_t runs = 0;
};

// Even decompressor: odd-length descriptions lose their final bit, so
// every minimal description has even length.
ExecOutcome v_decode(const BitStr& d, const BitStr& cond, const MachineBudgets& budgets);

ExecOutcome run_machine(MachineId id, const BitStr& d, const BitStr& cond, const SchemeParams& params,
                        RunCounter* counter = nullptr);

struct TableEntry {
  std::uint32_t length = 0;
  // Shortlex-least minimal description; absent for tables loaded from cache.
  std::optional<BitStr> witness;
};

// Exact minimal description lengths for every output reachable by a
// description of length <= bound.
class ComplexityTable {
 public:
  ComplexityTable(MachineId machine, BitStr cond, unsigned bound, std::uint64_t params_hash)
      : machine_(machine), cond_(std::move(cond)), bound_(bound), params_hash_(params_hash) {}

  MachineId machine() const noexcept { return machine_; }
  const BitStr& cond() const noexcept { return cond_; }
  unsigned bound() const noexcept { return bound_; }
  std::uint64_t params_hash() const noexcept { return params_hash_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t max_output_length() const noexcept { return max_output_length_; }

  // nullopt means "> bound".
  std::optional<std::uint32_t> complexity_of(const BitStr& x) const;
  const TableEntry* find(const BitStr& x) const;
  // Recovers the witness by re-enumerating when the table was loaded.
  BitStr witness(const BitStr& x, const SchemeParams& params) const;

  // Base-machine runs spent on descriptions of each length.
  const std::vector<std::uint64_t>& runs_by_length() const noexcept { return runs_by_length_; }
  std::uint64_t runs_below(std::size_t length) const;

  // Entries sorted shortlex by output.
  std::vector<std::pair<BitStr, std::uint32_t>> sorted_entries() const;

  void insert(const BitStr& output, std::uint32_t length, std::optional<BitStr> witness);
  void set_runs_by_length(std::vector<std::uint64_t> runs) { runs_by_length_ = std::move(runs); }

  friend bool operator==(const ComplexityTable& a, const ComplexityTable& b);

 private:
  MachineId machine_;
  BitStr cond_;
  unsigned bound_;
  std::uint64_t params_hash_;
  std::unordered_map<BitStr, TableEntry, BitStrHash> entries_;
  std::vector<std::uint64_t> runs_by_length_;
  std::size_t max_output_length_ = 0;
};

// Runs every description of length <= bound in shortlex order and keeps
// the first (hence shortlex-least) description of each output.
ComplexityTable build_table(MachineId id, const BitStr& cond, unsigned bound, const SchemeParams& params,
                            unsigned threads = 1);

// Text cache:
//   KCACHE v1 machine=<id> cond=<hex:len|-> bound=<int> params=<16 hex>
//   <hex>:<bitlen> <C>        (sorted by bit length, then value)
void save_cache(const ComplexityTable& table, const std::filesystem::path& path);
std::string serialize_cache(const ComplexityTable& table);
// Throws StaleCacheError when the file's params hash differs from `params`.
ComplexityTable load_cache(const std::filesystem::path& path, const SchemeParams& params);
ComplexityTable parse_cache(std::string_view text, const SchemeParams& params);
std::string cache_file_name(MachineId id, const BitStr& cond, unsigned bound, const SchemeParams& params);

// Loads the table from `dir` when a matching cache exists, otherwise builds
// and stores it.
ComplexityTable cached_table(const std::filesystem::path& dir, MachineId id, const BitStr& cond, unsigned bound,
                             const SchemeParams& params, unsigned threads = 1);

}  // namespace kolab
