#include "kolab/machine.hpp"

#include <algorithm>

#include "kolab/error.hpp"

namespace kolab {

namespace {

unsigned read3(const BitStr& code, std::size_t at) {
  return (static_cast<unsigned>(code[at]) << 2) | (static_cast<unsigned>(code[at + 1]) << 1) |
         static_cast<unsigned>(code[at + 2]);
}

// Control flow never depends on the buffer, so the first pass tracks only
// the buffer length. Only a halting run is replayed to build the output.
template <bool kBuild>
ExecOutcome execute(const BitStr& code, std::size_t begin, std::size_t end, const BitStr& cond,
                    std::uint64_t step_budget, std::uint64_t max_output) {
  const std::size_t size = end - begin;
  std::size_t pc = 0;
  std::uint64_t steps = 0;
  std::uint64_t length = 0;
  BitStr buffer;

  for (;;) {
    if (steps == step_budget) return {OutcomeKind::BudgetExceeded, {}, steps};
    ++steps;
    if (pc + 3 > size) return {OutcomeKind::Diverged, {}, steps};
    const auto op = static_cast<Opcode>(read3(code, begin + pc));
    pc += 3;
    switch (op) {
      case Opcode::Halt:
        if constexpr (kBuild) {
          return ExecOutcome::halted_with(std::move(buffer), steps);
        } else {
          return {OutcomeKind::Halted, {}, steps};
        }
      case Opcode::Append0:
      case Opcode::Append1:
        if (length + 1 > max_output) return {OutcomeKind::Stuck, {}, steps};
        ++length;
        if constexpr (kBuild) buffer.push_back(op == Opcode::Append1);
        break;
      case Opcode::AppendCond:
        if (length + cond.size() > max_output) return {OutcomeKind::Stuck, {}, steps};
        length += cond.size();
        if constexpr (kBuild) buffer.append(cond);
        break;
      case Opcode::Double:
        if (length * 2 > max_output) return {OutcomeKind::Stuck, {}, steps};
        length *= 2;
        if constexpr (kBuild) buffer.append(BitStr(buffer));
        break;
      case Opcode::Jump:
        if (pc + 3 > size) return {OutcomeKind::Diverged, {}, steps};
        pc = 3 * static_cast<std::size_t>(read3(code, begin + pc));
        break;
      case Opcode::DropLast:
        if (length > 0) {
          --length;
          if constexpr (kBuild) buffer.pop_back();
        }
        break;
      case Opcode::Nop:
        break;
    }
  }
}

}  // namespace

std::string_view to_string(OutcomeKind kind) noexcept {
  switch (kind) {
    case OutcomeKind::Halted: return "Halted";
    case OutcomeKind::Diverged: return "Diverged";
    case OutcomeKind::Stuck: return "Stuck";
    case OutcomeKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

void MachineBudgets::validate() const {
  if (exec_budget == 0 || halt_budget == 0 || max_output == 0) {
    throw Error("machine budgets must be strictly positive");
  }
  if (max_output > kMaxBits) throw Error("max_output above 2^20 bits");
}

ExecOutcome run_program(const BitStr& code, std::size_t begin, std::size_t end, const BitStr& cond,
                        std::uint64_t step_budget, std::uint64_t max_output) {
  ExecOutcome probe = execute<false>(code, begin, end, cond, step_budget, max_output);
  if (!probe.halted()) return probe;
  return execute<true>(code, begin, end, cond, step_budget, max_output);
}

ExecOutcome v_opt(const BitStr& d, std::size_t length, const BitStr& cond, const MachineBudgets& budgets) {
  if (length == 0) return ExecOutcome::stuck();
  if (d[0]) return ExecOutcome::halted_with(d.substr(1, length - 1));
  if (length == 1) return ExecOutcome::stuck();
  if (d[1]) {
    const auto target = try_decode_nat(cond);
    const std::size_t w = length - 2;
    if (!target || *target < w || *target > budgets.max_output) return ExecOutcome::stuck();
    BitStr out = d.substr(2, w);
    out.append_zeros(static_cast<std::size_t>(*target) - w);
    return ExecOutcome::halted_with(std::move(out));
  }
  return run_program(d, 2, length, cond, budgets.exec_budget, budgets.max_output);
}

ExecOutcome v_opt(const BitStr& d, const BitStr& cond, const MachineBudgets& budgets) {
  return v_opt(d, d.size(), cond, budgets);
}

ExecOutcome run_halting(const BitStr& x, const MachineBudgets& budgets) {
  return execute<false>(x, 0, x.size(), BitStr{}, budgets.halt_budget, budgets.max_output);
}

bool in_halting(const BitStr& x, const MachineBudgets& budgets) { return run_halting(x, budgets).halted(); }

}  // namespace kolab
