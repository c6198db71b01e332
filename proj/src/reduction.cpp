#include "kolab/reduction.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "kolab/error.hpp"
#include "kolab/machine.hpp"
#include "kolab/primes.hpp"

namespace kolab {

std::string_view to_string(KFilter filter) noexcept { return filter == KFilter::All ? "all" : "odd_only"; }

KFilter parse_k_filter(std::string_view text) {
  if (text == "all") return KFilter::All;
  if (text == "odd_only") return KFilter::OddOnly;
  throw Error("k_filter must be all or odd_only, got '" + std::string(text) + "'");
}

void ReductionConfig::validate() const {
  if (m < 1) throw Error("m must be at least 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error("threshold must lie in (0, 1]");
  params.validate();
}

bool event_probe(RandomnessOracle& oracle, const BitStr& y, const Gf2Matrix& a, OracleMode mode,
                 std::uint64_t* cost) {
  BitStr q = a.serialize();
  q.append(matvec(a, y));
  const auto plain = oracle.query(q, mode);
  q.append_zeros(oracle.params().pad);
  const auto padded = oracle.query(q, mode);
  if (cost) *cost += plain.cost + padded.cost;
  return plain.random && !padded.random;
}

std::vector<std::uint64_t> admissible_k(std::uint64_t n, KFilter filter) {
  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = 1; k + 1 <= n; ++k) {
    if (filter == KFilter::OddOnly && k % 2 == 0) continue;
    ks.push_back(k);
  }
  return ks;
}

double hoeffding_bound(std::uint64_t m, double p, double threshold) {
  if (!(p >= 0.0 && p < threshold && threshold <= 1.0)) {
    throw Error("hoeffding bound needs 0 <= p < threshold <= 1");
  }
  const double gap = threshold - p;
  return std::exp(-2.0 * static_cast<double>(m) * gap * gap);
}

ReductionReport decide_halting(const BitStr& x, const ReductionConfig& cfg, RandomnessOracle& oracle) {
  cfg.validate();
  if (!(oracle.params() == cfg.params)) throw Error("oracle and reduction use different scheme parameters");
  if (x.empty()) throw Error("decide_halting needs |x| >= 1");
  const auto start = std::chrono::steady_clock::now();

  ReductionReport r;
  r.x = x;
  r.l = x.size();
  r.p_l = nth_prime(r.l);
  r.n = r.p_l - 1;
  r.seed = cfg.seed;
  r.params_hash = cfg.params.hash();
  r.mode = cfg.mode;
  r.m = cfg.m;
  r.threshold = cfg.threshold;
  r.k_filter = cfg.k_filter;

  BitStr y = x;
  y.append_zeros(r.n - r.l);

  const auto ks = admissible_k(r.n, cfg.k_filter);
  r.per_k.resize(ks.size());
  std::vector<std::uint64_t> costs(ks.size(), 0);

  auto run_k = [&](std::size_t idx) {
    const std::uint64_t k = ks[idx];
    KStats stats{k, 0, cfg.m};
    for (std::uint64_t i = 0; i < cfg.m; ++i) {
      SeededRng rng(cfg.seed, matrix_stream(k, i));
      const auto a = sample_matrix(k, r.n, rng);
      if (event_probe(oracle, y, a, cfg.mode, &costs[idx])) ++stats.fired;
    }
    r.per_k[idx] = stats;
  };

  const unsigned workers = std::min<unsigned>(std::max(1U, cfg.threads), static_cast<unsigned>(ks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < ks.size(); ++i) run_k(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < ks.size(); i = next++) run_k(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < ks.size(); ++i) {
    r.logical_executions += costs[i];
    const auto& s = r.per_k[i];
    if (!r.firing_k && static_cast<double>(s.fired) >= cfg.threshold * static_cast<double>(s.m)) r.firing_k = s.k;
  }
  r.halts = r.firing_k.has_value();
  r.oracle_queries = 2 * cfg.m * ks.size();

  r.ground_truth = in_halting(x, cfg.params.budgets);
  const double spurious = std::ldexp(1.0, 1 - static_cast<int>(cfg.params.slack));
  if (spurious < cfg.threshold) r.hoeffding_negative_side = hoeffding_bound(cfg.m, spurious, cfg.threshold);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw Error("interval needs at least one trial");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

SpuriousEstimate spurious_rate_experiment(const BitStr& x, std::uint64_t k, std::uint64_t trials, std::uint64_t seed,
                                          RandomnessOracle& oracle, OracleMode mode) {
  const auto& P = oracle.params();
  if (trials == 0) throw Error("spurious-rate experiment needs trials >= 1");
  if (x.empty()) throw Error("spurious-rate experiment needs |x| >= 1");
  if (in_halting(x, P.budgets)) throw Error("spurious-rate experiment needs a non-halting x");
  const std::uint64_t n = nth_prime(x.size()) - 1;
  if (k < 1 || k >= n) throw Error("k must satisfy 1 <= k < n = " + std::to_string(n));

  BitStr y = x;
  y.append_zeros(n - x.size());
  SpuriousEstimate est;
  est.x = x;
  est.k = k;
  est.trials = trials;
  est.seed = seed;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SeededRng rng(seed, matrix_stream(k, i));
    if (event_probe(oracle, y, sample_matrix(k, n, rng), mode)) ++est.fired;
  }
  est.frequency = static_cast<double>(est.fired) / static_cast<double>(trials);
  const auto ci = wilson_interval(est.fired, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.bound = std::ldexp(1.0, 1 - static_cast<int>(P.slack));
  est.within_bound = est.ci_high <= est.bound + 0.02;
  return est;
}

SpuriousEstimate spurious_rate_experiment(std::uint64_t l, std::uint64_t k, std::uint64_t trials, std::uint64_t seed,
                                          RandomnessOracle& oracle, OracleMode mode) {
  if (l == 0 || l > 20) throw Error("l must lie in 1..20");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << l); ++code) {
    BitStr x = BitStr::from_uint(code, l);
    if (!in_halting(x, oracle.params().budgets)) return spurious_rate_experiment(x, k, trials, seed, oracle, mode);
  }
  throw Error("every program of length " + std::to_string(l) + " halts");
}

}  // namespace kolab
