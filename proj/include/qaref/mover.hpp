/**
 * @file mover.hpp
 * @brief Commutation rules 1-5 and the iterative assertion movement pass.
 *
 * Each assertion is compared with its predecessor instruction and swapped
 * upward while a commutation rule applies, stopping at the first
 * non-commuting instruction or at program start:
 *
 *   1. Non-functional instructions (definitions, declarations, barriers)
 *      commute with any assertion.
 *   2. Non-measurement instructions acting only on qubits disjoint from the
 *      assertion's targets commute with any assertion.
 *   3. Instructions with diagonal or anti-diagonal operator matrices commute
 *      with superposition assertions (the diagonal of the targets' reduced
 *      density matrix is preserved or permuted).
 *   4. Non-measurement single-qubit instructions commute with entanglement
 *      assertions (local unitaries cannot change entanglement).
 *   5. Measurement and reset instructions commute with nothing; this veto
 *      dominates every other rule.
 *
 * Assertions always commute with each other (both are read-only), reported
 * as rule 0. An assertion climbs past a run of other assertions only when it
 * also passes a non-assertion instruction beyond the run. Afterwards, inside
 * each contiguous run, the assertions that moved this pass are floated above
 * the ones that were already parked (newest id first among the movers), as
 * if they had climbed across them; this keeps the pass idempotent.
 */

#pragma once

#include "qaref/program.hpp"

#include <optional>
#include <vector>

namespace qaref {

struct CommuteDecision {
  bool commutes = false;
  int rule = 0;  ///< 1-5, or 0 for assertion-with-assertion
};

/// Decide whether `instr` (a predecessor) commutes with the assertion.
/// Returns the lowest-numbered applicable rule; rule 5 vetoes first.
CommuteDecision commutes(const ResolvedAssertion& assertion,
                         const Instruction& instr);

struct MoveRecord {
  int assertionId = 0;
  int originLine = 0;
  size_t indexBefore = 0;  ///< position when this assertion was processed
  size_t indexAfter = 0;   ///< position reached by its climb (<= indexBefore)
  size_t finalIndex = 0;   ///< position in the returned program
  /// First non-commuting predecessor (assertions are transparent), if any.
  std::optional<size_t> blockedByFinalIndex;
  std::optional<int> blockedByLine;
  std::vector<int> rulesFired;  ///< one rule id per upward hop, bottom-up

  [[nodiscard]] bool moved() const { return indexAfter < indexBefore; }
};

struct MoveResult {
  FlatProgram program;
  std::vector<MoveRecord> records;
};

/// Hoist every assertion, processing them in ascending index order.
MoveResult moveAll(const FlatProgram& program);

} // namespace qaref
