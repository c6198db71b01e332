#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kolab/bits.hpp"
#include "kolab/gf2.hpp"
#include "kolab/oracle.hpp"
#include "kolab/params.hpp"

namespace kolab {

enum class KFilter { All, OddOnly };

std::string_view to_string(KFilter filter) noexcept;
KFilter parse_k_filter(std::string_view text);

struct ReductionConfig {
  std::uint64_t m = 200;  // matrices per k
  std::uint64_t seed = 1;
  double threshold = 0.5;
  KFilter k_filter = KFilter::All;
  OracleMode mode = OracleMode::Structural;
  SchemeParams params;
  unsigned threads = 1;

  void validate() const;
};

struct KStats {
  std::uint64_t k = 0;
  std::uint64_t fired = 0;
  std::uint64_t m = 0;
  double fraction() const { return m == 0 ? 0.0 : static_cast<double>(fired) / static_cast<double>(m); }
};

struct ReductionReport {
  BitStr x;
  std::uint64_t l = 0, p_l = 0, n = 0;
  bool halts = false;  // the verdict
  std::vector<KStats> per_k;
  std::optional<std::uint64_t> firing_k;  // smallest k reaching the threshold
  bool ground_truth = false;               // in_halting(x), computed after the verdict
  std::uint64_t seed = 0;
  std::uint64_t params_hash = 0;
  OracleMode mode = OracleMode::Structural;
  std::uint64_t m = 0;
  double threshold = 0.5;
  KFilter k_filter = KFilter::All;
  std::uint64_t oracle_queries = 0;
  std::uint64_t logical_executions = 0;
  // exp(-2 m (threshold - 2^(1-slack))^2); nullopt when the bound is vacuous.
  std::optional<double> hoeffding_negative_side;
  double wall_time = 0.0;
};

// A (A y) is random and A (A y) 0^pad is not.
bool event_probe(RandomnessOracle& oracle, const BitStr& y, const Gf2Matrix& a, OracleMode mode,
                 std::uint64_t* cost = nullptr);

// y = x 0^(n - l), n = p_l - 1. For each admissible k in 1..n-1, m matrices
// drawn from substreams (seed, k, i) are probed; HALTS iff some k fires on
// at least threshold * m of them. Only oracle verdicts feed the decision.
ReductionReport decide_halting(const BitStr& x, const ReductionConfig& cfg, RandomnessOracle& oracle);

// Admissible k values for n under the filter.
std::vector<std::uint64_t> admissible_k(std::uint64_t n, KFilter filter);

// exp(-2 m (threshold - p)^2). Requires 0 <= p < threshold <= 1.
double hoeffding_bound(std::uint64_t m, double p, double threshold);

struct SpuriousEstimate {
  BitStr x;
  std::uint64_t k = 0;
  std::uint64_t trials = 0;
  std::uint64_t fired = 0;
  double frequency = 0.0;
  double ci_low = 0.0;   // Wilson score interval, 95%
  double ci_high = 0.0;
  double bound = 0.0;    // 2^(1 - slack)
  bool within_bound = false;  // ci_high <= bound + 0.02
  std::uint64_t seed = 0;
};

// Per-matrix frequency of the event for a non-halting x.
SpuriousEstimate spurious_rate_experiment(const BitStr& x, std::uint64_t k, std::uint64_t trials, std::uint64_t seed,
                                          RandomnessOracle& oracle, OracleMode mode = OracleMode::Structural);
// Uses the shortlex-first non-halting program of length l.
SpuriousEstimate spurious_rate_experiment(std::uint64_t l, std::uint64_t k, std::uint64_t trials, std::uint64_t seed,
                                          RandomnessOracle& oracle, OracleMode mode = OracleMode::Structural);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace kolab
