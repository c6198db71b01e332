#include "kolab/decompressor.hpp"

#include <algorithm>

#include "kolab/error.hpp"
#include "kolab/primes.hpp"

namespace kolab {

namespace {

bool has_ones_then_zero(const BitStr& d, std::size_t ones) {
  if (d.size() < ones + 1) return false;
  for (std::size_t i = 0; i < ones; ++i) {
    if (!d[i]) return false;
  }
  return !d[ones];
}

struct Case3Shape {
  SpecificParse spec;
  std::size_t matrix_bits;
};

std::optional<Case3Shape> case3_shape(const BitStr& d, const SchemeParams& params) {
  if (d.empty() || d[0]) return std::nullopt;
  const auto spec = parse_specific(d.size() - 1 + params.slack);
  if (!spec || spec->k < params.slack) return std::nullopt;
  return Case3Shape{*spec, static_cast<std::size_t>(spec->n * spec->k)};
}

}  // namespace

std::optional<Case3Parse> parse_case3(const BitStr& d, const SchemeParams& params) {
  const auto shape = case3_shape(d, params);
  if (!shape) return std::nullopt;
  const auto& s = shape->spec;
  auto a = Gf2Matrix::deserialize(d.substr(1, shape->matrix_bits), s.k, s.n);
  return Case3Parse{s.p, s.k, s.l, s.n, std::move(a), d.substr(1 + shape->matrix_bits, s.k - params.slack)};
}

bool is_exception_form(const BitStr& y, const SchemeParams& params) {
  if (y.size() < params.pad || !y.ends_with_zeros(params.pad)) return false;
  return parse_specific(y.size() - params.pad).has_value();
}

bool case1_admits(std::size_t desc_length, const BitStr& y, const SchemeParams& params) {
  if (!is_exception_form(y, params)) return true;
  if (params.case1_rule == Case1Rule::Strict) return desc_length + params.G < y.size();
  return y.size() + params.G > desc_length;
}

ExecOutcome u_decode(const BitStr& d, const SchemeParams& params, RunCounter* counter) {
  const std::size_t D = params.D;
  if (has_ones_then_zero(d, D)) return ExecOutcome::halted_with(d.substr(D + 1, d.size() - D - 1));

  if (has_ones_then_zero(d, D - 1)) {
    const BitStr inner = d.substr(D, d.size() - D);
    if (counter) ++counter->runs;
    ExecOutcome out = v_decode(inner, BitStr{}, params.budgets);
    if (!out.halted()) return out;
    if (!case1_admits(inner.size(), out.output, params)) return ExecOutcome::stuck();
    return out;
  }

  const auto shape = case3_shape(d, params);
  if (!shape) return ExecOutcome::stuck();
  const auto& s = shape->spec;
  const BitStr d2 = d.substr(1 + shape->matrix_bits, s.k - params.slack);
  if (counter) ++counter->runs;
  ExecOutcome inner = v_decode(d2, encode_nat(s.n), params.budgets);
  if (!inner.halted() || inner.output.size() != s.n) return ExecOutcome::stuck();
  if (counter) ++counter->runs;
  if (!in_halting(inner.output.prefix(s.l), params.budgets)) return ExecOutcome::stuck();
  const auto a = Gf2Matrix::deserialize(d.substr(1, shape->matrix_bits), s.k, s.n);
  BitStr out = d.substr(1, shape->matrix_bits);
  out.append(matvec(a, inner.output));
  out.append_zeros(params.pad);
  return ExecOutcome::halted_with(std::move(out));
}

ExecOutcome w_decode(const BitStr& d, const MachineBudgets& budgets, RunCounter* counter) {
  if (d.size() >= 2 && !d[0] && !d[1]) {
    if (counter) ++counter->runs;
    return v_decode(d.substr(2, d.size() - 2), BitStr{}, budgets);
  }
  if (!d.empty() && d[0]) {
    if (counter) ++counter->runs;
    ExecOutcome out = v_decode(d.substr(1, d.size() - 1), BitStr{}, budgets);
    if (!out.halted()) return out;
    if (counter) ++counter->runs;
    if (!in_halting(out.output, budgets)) return ExecOutcome::stuck();
    return out;
  }
  return ExecOutcome::stuck();
}

bool parity_solve_halting(const BitStr& x, const ComplexityTable& w_table) {
  if (w_table.machine() != MachineId::W) throw Error("parity solver needs a W table");
  const auto c = w_table.complexity_of(x);
  if (!c) throw Error("C_W(" + to_hex(x) + ") > " + std::to_string(w_table.bound()));
  return *c % 2 == 1;
}

GCalibration calibrate_g(const SchemeParams& params, std::uint64_t max_len, const ComplexityTable& v_table) {
  if (max_len + params.pad > params.enum_bound || max_len + params.pad > v_table.bound()) {
    throw Error("calibration needs max_len + pad <= enum_bound (" + std::to_string(max_len) + " + " +
                std::to_string(params.pad) + " > " + std::to_string(std::min<std::uint64_t>(params.enum_bound,
                                                                                           v_table.bound())) +
                ")");
  }
  if (v_table.machine() != MachineId::V || !v_table.cond().empty()) {
    throw Error("calibration needs the unconditional V table");
  }
  GCalibration cal;
  cal.params_hash = params.hash();
  bool have_witness = false;
  for (std::uint64_t len = 0; len <= max_len; ++len) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
      const BitStr x = BitStr::from_uint(code, len);
      ++cal.checked;
      // "> bound" is always at least |x| - D here since |x| < bound.
      const auto cx = v_table.complexity_of(x);
      if (cx && static_cast<std::int64_t>(*cx) < static_cast<std::int64_t>(len) - static_cast<std::int64_t>(params.D)) {
        continue;
      }
      ++cal.qualifying;
      BitStr padded = x;
      padded.append_zeros(params.pad);
      const auto cp = v_table.complexity_of(padded);
      const std::int64_t target = static_cast<std::int64_t>(len + params.pad);
      const std::int64_t gap = target - (cp ? static_cast<std::int64_t>(*cp) : static_cast<std::int64_t>(v_table.bound()) + 1);
      if (!have_witness || gap > cal.worst_gap) {
        cal.worst_gap = gap;
        cal.witness = x;
        have_witness = true;
      }
    }
  }
  cal.g_star = cal.worst_gap > 0 ? static_cast<std::uint64_t>(cal.worst_gap) : 0;
  return cal;
}

GCalibration calibrate_g(const SchemeParams& params, std::uint64_t max_len) {
  if (max_len + params.pad > params.enum_bound) {
    throw Error("calibration needs max_len + pad <= enum_bound");
  }
  return calibrate_g(params, max_len, build_table(MachineId::V, BitStr{}, static_cast<unsigned>(params.enum_bound), params));
}

}  // namespace kolab
