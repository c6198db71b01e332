#pragma once

#include <cstdint>
#include <string_view>

#include "kolab/bits.hpp"

namespace kolab {

struct MachineBudgets {
  std::uint64_t exec_budget = 4096;
  std::uint64_t halt_budget = 4096;
  std::uint64_t max_output = std::uint64_t{1} << 16;

  void validate() const;
  friend bool operator==(const MachineBudgets&, const MachineBudgets&) = default;
};

enum class OutcomeKind { Halted, Diverged, Stuck, BudgetExceeded };

std::string_view to_string(OutcomeKind kind) noexcept;

struct ExecOutcome {
  OutcomeKind kind = OutcomeKind::Stuck;
  BitStr output;           // meaningful only when Halted
  std::uint64_t steps = 0;  // opcode fetches performed (0 outside program mode)

  bool halted() const noexcept { return kind == OutcomeKind::Halted; }

  static ExecOutcome halted_with(BitStr out, std::uint64_t steps = 0) {
    return {OutcomeKind::Halted, std::move(out), steps};
  }
  static ExecOutcome stuck() { return {OutcomeKind::Stuck, {}, 0}; }

  friend bool operator==(const ExecOutcome&, const ExecOutcome&) = default;
};

// Opcodes, 3 bits each, fetched at a moving bit offset:
//   000 HALT  001 APPEND0  010 APPEND1  011 APPEND_COND
//   100 DOUBLE  101 JUMP <3-bit slot>  110 DROP_LAST  111 NOP
enum class Opcode : std::uint8_t {
  Halt = 0,
  Append0 = 1,
  Append1 = 2,
  AppendCond = 3,
  Double = 4,
  Jump = 5,
  DropLast = 6,
  Nop = 7,
};

// Runs bits [begin, end) of `code` as an opcode stream.
ExecOutcome run_program(const BitStr& code, std::size_t begin, std::size_t end, const BitStr& cond,
                        std::uint64_t step_budget, std::uint64_t max_output);

// Base conditional decompressor. Mode is chosen by the leading bits:
//   1 x     literal, outputs x
//   01 w    pad, outputs w 0^(N-|w|) for N = decode_nat(cond), needs N >= |w|
//   00 p    runs p on the opcode machine
//   "", 0   undefined
// Only the first `length` bits of `d` are read.
ExecOutcome v_opt(const BitStr& d, std::size_t length, const BitStr& cond, const MachineBudgets& budgets);
ExecOutcome v_opt(const BitStr& d, const BitStr& cond, const MachineBudgets& budgets);

// x run as a raw opcode stream with empty condition and halt_budget steps.
ExecOutcome run_halting(const BitStr& x, const MachineBudgets& budgets);
bool in_halting(const BitStr& x, const MachineBudgets& budgets);

}  // namespace kolab
