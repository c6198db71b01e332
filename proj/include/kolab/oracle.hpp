#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kolab/bits.hpp"
#include "kolab/complexity.hpp"
#include "kolab/params.hpp"

namespace kolab {

enum class OracleMode { Exact, Structural };

std::string_view to_string(OracleMode mode) noexcept;
OracleMode parse_oracle_mode(std::string_view text);

struct OracleVerdict {
  BitStr q;
  bool random = true;
  OracleMode mode = OracleMode::Structural;
  // A U-description shorter than q whenever random is false.
  std::optional<BitStr> witness;
  // Logical base-machine executions the decision rests on. Structural mode
  // counts 2^(k-slack) for a case-3 inversion plus every V-description the
  // bounded case-1 search covers; both are served from memoized tables.
  std::uint64_t cost = 0;
};

// True when the verdict is random or its witness decodes to q under U and
// is strictly shorter than q.
bool verify_witness(const OracleVerdict& verdict, const SchemeParams& params);

// Membership in R_U = { x : C_U(x) >= |x| }.
//
// Exact mode reads a forward U table covering every description shorter
// than q, so it is limited to |q| <= enum_bound + 1. Structural mode
// decides any length: it inverts the case-3 layout A c 0^pad by trying
// every d2 of length k - slack, and looks q up in the unconditional V table
// for a case-1 description. It can only err toward "random", and agrees
// with exact mode whenever |q| - D - 1 <= enum_bound.
//
// Every non-random verdict is re-decoded before it is returned.
class RandomnessOracle {
 public:
  explicit RandomnessOracle(SchemeParams params, unsigned threads = 1);

  OracleVerdict query(const BitStr& q, OracleMode mode);
  OracleVerdict exact(const BitStr& q);
  OracleVerdict structural(const BitStr& q);

  const SchemeParams& params() const noexcept { return params_; }
  std::uint64_t query_count() const;

  std::shared_ptr<const ComplexityTable> v_table();
  // A U table whose bound is at least `bound`.
  std::shared_ptr<const ComplexityTable> u_table(unsigned bound);

  struct Candidate {
    BitStr d2;  // shortlex-least description of y
    BitStr y;
  };
  // Every y with |y| = n, prefix_l(y) in H_T and a V-description of length
  // d2_length given encode_nat(n); ordered by that description.
  std::shared_ptr<const std::vector<Candidate>> case3_candidates(std::uint64_t n, std::uint64_t l,
                                                                 std::size_t d2_length);

  static constexpr std::size_t kInversionCap = 26;

 private:
  OracleVerdict compute(const BitStr& q, OracleMode mode);
  OracleVerdict compute_exact(const BitStr& q);
  OracleVerdict compute_structural(const BitStr& q);

  SchemeParams params_;
  unsigned threads_;

  mutable std::mutex mutex_;
  std::shared_ptr<const ComplexityTable> v_table_;
  std::shared_ptr<const ComplexityTable> u_table_;
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::size_t>, std::shared_ptr<const std::vector<Candidate>>>
      candidates_;
  std::unordered_map<BitStr, OracleVerdict, BitStrHash> memo_[2];
  std::uint64_t queries_ = 0;
};

struct LengthAgreement {
  std::size_t length = 0;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::uint64_t agreed = 0;
  std::uint64_t nonrandom = 0;  // by exact mode
};

struct CrossValidation {
  std::vector<LengthAgreement> per_length;
  std::uint64_t checked = 0;
  std::uint64_t agreed = 0;
  std::vector<BitStr> disagreements;  // first few
  std::uint64_t params_hash = 0;

  double agreement() const { return checked == 0 ? 1.0 : static_cast<double>(agreed) / checked; }
};

// Exhaustive over lengths 0..exhaustive_max, then `samples` strings for
// each length in sample_lo..sample_hi: half uniform, half drawn from the
// outputs of short U-descriptions so that non-random strings are covered.
CrossValidation cross_validate(RandomnessOracle& oracle, std::size_t exhaustive_max, std::size_t sample_lo,
                               std::size_t sample_hi, std::uint64_t samples, std::uint64_t seed);

struct PairLemmaCheck {
  std::uint64_t p = 0, k = 0, n = 0, l = 0;
  std::uint64_t strings = 0;     // 2^(p k)
  std::uint64_t hypothesis = 0;  // b with C_U(b) >= |b| and C_U(b 0^pad) < |b| + pad
  std::uint64_t counterexamples = 0;
  std::optional<BitStr> first_counterexample;
  std::uint64_t params_hash = 0;
};

// For every b of length p k (b = A c, |c| = k): if C_U(b) >= |b| and
// C_U(b 0^pad) < |b| + pad, some y of length n = p - 1 has A y = c,
// C_V(y | n) <= k - slack and prefix_l(y) in H_T.
PairLemmaCheck check_pair_lemma(const SchemeParams& params, std::uint64_t p, std::uint64_t k, unsigned threads = 1);

}  // namespace kolab
