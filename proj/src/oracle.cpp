#include "kolab/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "kolab/decompressor.hpp"
#include "kolab/error.hpp"
#include "kolab/gf2.hpp"
#include "kolab/primes.hpp"

namespace kolab {

namespace {

constexpr std::size_t kMemoCap = std::size_t{1} << 15;

std::uint64_t saturating_pow2(std::size_t e) {
  return e >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << e;
}

}  // namespace

std::string_view to_string(OracleMode mode) noexcept {
  return mode == OracleMode::Exact ? "exact" : "structural";
}

OracleMode parse_oracle_mode(std::string_view text) {
  if (text == "exact") return OracleMode::Exact;
  if (text == "structural") return OracleMode::Structural;
  throw Error("oracle mode must be exact or structural, got '" + std::string(text) + "'");
}

bool verify_witness(const OracleVerdict& verdict, const SchemeParams& params) {
  if (verdict.random) return true;
  if (!verdict.witness || verdict.witness->size() >= verdict.q.size()) return false;
  const auto out = u_decode(*verdict.witness, params);
  return out.halted() && out.output == verdict.q;
}

RandomnessOracle::RandomnessOracle(SchemeParams params, unsigned threads)
    : params_(std::move(params)), threads_(std::max(1U, threads)) {
  params_.validate();
}

std::uint64_t RandomnessOracle::query_count() const {
  std::lock_guard lock(mutex_);
  return queries_;
}

std::shared_ptr<const ComplexityTable> RandomnessOracle::v_table() {
  {
    std::lock_guard lock(mutex_);
    if (v_table_) return v_table_;
  }
  auto built = std::make_shared<const ComplexityTable>(
      build_table(MachineId::V, BitStr{}, static_cast<unsigned>(params_.enum_bound), params_, threads_));
  std::lock_guard lock(mutex_);
  if (!v_table_) v_table_ = std::move(built);
  return v_table_;
}

std::shared_ptr<const ComplexityTable> RandomnessOracle::u_table(unsigned bound) {
  {
    std::lock_guard lock(mutex_);
    if (u_table_ && u_table_->bound() >= bound) return u_table_;
  }
  auto built = std::make_shared<const ComplexityTable>(build_table(MachineId::U, BitStr{}, bound, params_, threads_));
  std::lock_guard lock(mutex_);
  if (!u_table_ || u_table_->bound() < bound) u_table_ = std::move(built);
  return u_table_;
}

std::shared_ptr<const std::vector<RandomnessOracle::Candidate>> RandomnessOracle::case3_candidates(
    std::uint64_t n, std::uint64_t l, std::size_t d2_length) {
  const auto key = std::make_tuple(n, l, d2_length);
  {
    std::lock_guard lock(mutex_);
    if (auto it = candidates_.find(key); it != candidates_.end()) return it->second;
  }
  if (d2_length > kInversionCap) {
    throw Error("case-3 inversion needs 2^" + std::to_string(d2_length) + " runs; cap is 2^26");
  }
  auto list = std::make_shared<std::vector<Candidate>>();
  std::unordered_set<BitStr, BitStrHash> seen;
  const BitStr cond = encode_nat(n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << d2_length); ++code) {
    BitStr d2 = BitStr::from_uint(code, d2_length);
    auto out = v_decode(d2, cond, params_.budgets);
    if (!out.halted() || out.output.size() != n || seen.count(out.output)) continue;
    if (!in_halting(out.output.prefix(l), params_.budgets)) continue;
    seen.insert(out.output);
    list->push_back({std::move(d2), std::move(out.output)});
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = candidates_.try_emplace(key, std::move(list));
  return it->second;
}

OracleVerdict RandomnessOracle::query(const BitStr& q, OracleMode mode) {
  auto& memo = memo_[mode == OracleMode::Exact ? 0 : 1];
  {
    std::lock_guard lock(mutex_);
    ++queries_;
    if (auto it = memo.find(q); it != memo.end()) return it->second;
  }
  OracleVerdict verdict = compute(q, mode);
  if (!verify_witness(verdict, params_)) {
    throw std::logic_error("oracle produced a witness that does not decode to " + to_hex(q));
  }
  std::lock_guard lock(mutex_);
  if (memo.size() >= kMemoCap) memo.clear();
  memo.emplace(q, verdict);
  return verdict;
}

OracleVerdict RandomnessOracle::exact(const BitStr& q) { return query(q, OracleMode::Exact); }

OracleVerdict RandomnessOracle::structural(const BitStr& q) { return query(q, OracleMode::Structural); }

OracleVerdict RandomnessOracle::compute(const BitStr& q, OracleMode mode) {
  return mode == OracleMode::Exact ? compute_exact(q) : compute_structural(q);
}

OracleVerdict RandomnessOracle::compute_exact(const BitStr& q) {
  if (q.size() > params_.enum_bound + 1) {
    throw Error("exact oracle handles |q| <= " + std::to_string(params_.enum_bound + 1) + ", got " +
                std::to_string(q.size()));
  }
  OracleVerdict v{q, true, OracleMode::Exact, std::nullopt, 0};
  if (q.empty()) return v;
  const auto table = u_table(static_cast<unsigned>(q.size() - 1));
  v.cost = table->runs_below(q.size());
  if (const auto* e = table->find(q); e && e->length < q.size()) {
    v.random = false;
    v.witness = table->witness(q, params_);
  }
  return v;
}

OracleVerdict RandomnessOracle::compute_structural(const BitStr& q) {
  OracleVerdict v{q, true, OracleMode::Structural, std::nullopt, 0};
  const auto& P = params_;

  if (q.size() >= P.pad && q.ends_with_zeros(P.pad)) {
    const auto spec = parse_specific(q.size() - P.pad);
    if (spec && spec->k >= P.slack) {
      const std::size_t d2_length = spec->k - P.slack;
      const std::size_t matrix_bits = spec->n * spec->k;
      const auto cands = case3_candidates(spec->n, spec->l, d2_length);
      v.cost += saturating_pow2(d2_length);
      const BitStr a_bits = q.prefix(matrix_bits);
      const auto a = Gf2Matrix::deserialize(a_bits, spec->k, spec->n);
      const BitStr c = q.substr(matrix_bits, spec->k);
      for (const auto& cand : *cands) {
        if (matvec(a, cand.y) == c) {
          BitStr w = BitStr::zeros(1);
          w.append(a_bits);
          w.append(cand.d2);
          v.random = false;
          v.witness = std::move(w);
          return v;
        }
      }
    }
  }

  // Case 2 descriptions are always longer than their output.
  if (q.size() >= P.D + 1) {
    const std::size_t reach = std::min<std::size_t>(q.size() - P.D - 1, P.enum_bound);
    v.cost += saturating_pow2(reach + 1) - 1;
    const auto table = v_table();
    if (const auto* e = table->find(q); e && e->length <= reach && case1_admits(e->length, q, P)) {
      BitStr w = BitStr::ones(P.D - 1);
      w.push_back(false);
      w.append(table->witness(q, P));
      v.random = false;
      v.witness = std::move(w);
    }
  }
  return v;
}

CrossValidation cross_validate(RandomnessOracle& oracle, std::size_t exhaustive_max, std::size_t sample_lo,
                               std::size_t sample_hi, std::uint64_t samples, std::uint64_t seed) {
  const auto& P = oracle.params();
  const std::size_t top = std::max(exhaustive_max, samples > 0 ? sample_hi : 0);
  if (top > P.enum_bound + 1) throw Error("cross-validation lengths must stay within the exact regime");
  CrossValidation report;
  report.params_hash = P.hash();
  const auto table = oracle.u_table(static_cast<unsigned>(top == 0 ? 0 : top - 1));

  auto check = [&](const BitStr& q, LengthAgreement& row) {
    const auto ex = oracle.exact(q);
    const auto st = oracle.structural(q);
    ++row.checked;
    if (!ex.random) ++row.nonrandom;
    if (ex.random == st.random) {
      ++row.agreed;
    } else if (report.disagreements.size() < 16) {
      report.disagreements.push_back(q);
    }
  };

  for (std::size_t len = 0; len <= exhaustive_max; ++len) {
    LengthAgreement row{len, true};
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) check(BitStr::from_uint(code, len), row);
    report.per_length.push_back(row);
  }

  if (samples > 0) {
    std::vector<std::vector<BitStr>> reachable(sample_hi + 1);
    for (const auto& [x, c] : table->sorted_entries()) {
      if (x.size() >= sample_lo && x.size() <= sample_hi) reachable[x.size()].push_back(x);
    }
    for (std::size_t len = std::max(sample_lo, exhaustive_max + 1); len <= sample_hi; ++len) {
      LengthAgreement row{len, false};
      SeededRng rng(seed, len);
      for (std::uint64_t i = 0; i < samples; ++i) {
        BitStr q;
        if (i % 2 == 1 && !reachable[len].empty()) {
          q = reachable[len][rng.uniform(reachable[len].size())];
        } else {
          q = BitStr::zeros(len);
          for (std::size_t b = 0; b < len; ++b) q.set(b, rng.next_bit());
        }
        check(q, row);
      }
      report.per_length.push_back(row);
    }
  }

  for (const auto& row : report.per_length) {
    report.checked += row.checked;
    report.agreed += row.agreed;
  }
  return report;
}

PairLemmaCheck check_pair_lemma(const SchemeParams& params, std::uint64_t p, std::uint64_t k, unsigned threads) {
  params.validate();
  const auto spec = parse_specific(p * k);
  if (!spec || spec->p != p) throw Error("p*k must be specific with large prime divider p");
  const std::uint64_t blen = p * k;
  if (blen + params.pad - 1 > kMaxEnumBound) throw Error("|b| + pad too large for exhaustive check");

  PairLemmaCheck report;
  report.p = p;
  report.k = k;
  report.n = spec->n;
  report.l = spec->l;
  report.strings = std::uint64_t{1} << blen;
  report.params_hash = params.hash();

  const auto u = build_table(MachineId::U, BitStr{}, static_cast<unsigned>(blen + params.pad - 1), params, threads);

  // Strings the conclusion may name: C_V(y | n) <= k - slack, prefix in H_T.
  std::vector<BitStr> low;
  if (k >= params.slack) {
    const auto v = build_table(MachineId::V, encode_nat(spec->n), static_cast<unsigned>(k - params.slack), params);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << spec->n); ++code) {
      BitStr y = BitStr::from_uint(code, spec->n);
      if (v.complexity_of(y) && in_halting(y.prefix(spec->l), params.budgets)) low.push_back(std::move(y));
    }
  }

  const std::size_t matrix_bits = spec->n * k;
  for (std::uint64_t code = 0; code < report.strings; ++code) {
    BitStr b = BitStr::from_uint(code, blen);
    if (auto c = u.complexity_of(b); c && *c < blen) continue;
    BitStr padded = b;
    padded.append_zeros(params.pad);
    if (auto c = u.complexity_of(padded); !c || *c >= blen + params.pad) continue;
    ++report.hypothesis;
    const auto a = Gf2Matrix::deserialize(b.prefix(matrix_bits), k, spec->n);
    const BitStr c = b.substr(matrix_bits, k);
    const bool found = std::any_of(low.begin(), low.end(), [&](const BitStr& y) { return matvec(a, y) == c; });
    if (!found) {
      ++report.counterexamples;
      if (!report.first_counterexample) report.first_counterexample = b;
    }
  }
  return report;
}

}  // namespace kolab
