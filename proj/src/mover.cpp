/**
 * @file mover.cpp
 * @brief Iterative assertion movement.
 */

#include "qaref/mover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qaref {

CommuteDecision commutes(const ResolvedAssertion& assertion,
                         const Instruction& instr) {
  // Rule 5 vetoes everything else.
  if (instr.kind == InstrKind::MeasurementLike) {
    return {false, 0};
  }
  // Assertions are read-only observations; they commute with each other.
  if (instr.kind == InstrKind::Assertion) {
    return {true, 0};
  }
  if (instr.kind == InstrKind::NonFunctional) {
    return {true, 1};
  }
  if (!instr.touchesAny(assertion.targets)) {
    return {true, 2};
  }
  if (assertion.kind == AssertionKind::Superposition &&
      (instr.unitaryClass == UnitaryClass::Diagonal ||
       instr.unitaryClass == UnitaryClass::AntiDiagonal)) {
    return {true, 3};
  }
  if (assertion.kind == AssertionKind::Entanglement &&
      instr.acted.size() == 1) {
    return {true, 4};
  }
  return {false, 0};
}

MoveResult moveAll(const FlatProgram& program) {
  MoveResult result;
  result.program = program;
  auto& instrs = result.program.instructions;

  std::vector<size_t> assertionPositions;
  for (size_t i = 0; i < instrs.size(); ++i) {
    if (instrs[i].kind == InstrKind::Assertion) {
      assertionPositions.push_back(i);
    }
  }

  // Positions of earlier-processed assertions only move up, so the
  // recorded start position of each later assertion stays valid.
  for (const size_t start : assertionPositions) {
    const ResolvedAssertion assertion = *instrs[start].assertion;
    MoveRecord record;
    record.assertionId = assertion.id;
    record.originLine = instrs[start].originLine;
    record.indexBefore = start;

    size_t pos = start;
    std::vector<int> rules;
    std::optional<size_t> blocker;
    while (pos > 0) {
      size_t probe = pos;
      size_t assertionRun = 0;
      while (probe > 0 && instrs[probe - 1].kind == InstrKind::Assertion) {
        --probe;
        ++assertionRun;
      }
      if (probe == 0) {
        // Only assertions above: climbing further would gain nothing and
        // would reorder the run; stop below it.
        break;
      }
      const CommuteDecision decision = commutes(assertion, instrs[probe - 1]);
      if (!decision.commutes) {
        blocker = probe - 1;
        break;
      }
      // Cross the assertion run (if any) plus the commuting instruction.
      for (size_t k = 0; k < assertionRun; ++k) {
        rules.push_back(0);
      }
      rules.push_back(decision.rule);
      const Instruction moving = std::move(instrs[pos]);
      instrs.erase(instrs.begin() + static_cast<std::ptrdiff_t>(pos));
      instrs.insert(instrs.begin() + static_cast<std::ptrdiff_t>(probe - 1),
                    moving);
      pos = probe - 1;
    }
    record.indexAfter = pos;
    record.rulesFired = std::move(rules);
    if (record.moved()) {
      instrs[pos].assertion->movedFromLine = record.originLine;
    }
    if (blocker.has_value()) {
      record.blockedByLine = instrs[*blocker].originLine;
      // Remember the blocking instruction itself; indices are resolved
      // after canonicalization below.
      record.blockedByFinalIndex = *blocker;
    }
    result.records.push_back(std::move(record));
  }

  // Canonical order within each contiguous assertion run: assertions that
  // moved this pass float above those that were already parked (as if they
  // had climbed across them), newest id first among the movers; parked
  // assertions keep their relative order. Reordering inside a run never
  // changes verdicts (assertions are read-only and nothing acts between
  // them), and a rerun moves nothing, so the pass is idempotent.
  std::set<int> movedIds;
  for (const MoveRecord& record : result.records) {
    if (record.moved()) {
      movedIds.insert(record.assertionId);
    }
  }
  for (size_t i = 0; i < instrs.size();) {
    if (instrs[i].kind != InstrKind::Assertion) {
      ++i;
      continue;
    }
    size_t end = i;
    while (end < instrs.size() && instrs[end].kind == InstrKind::Assertion) {
      ++end;
    }
    std::vector<size_t> order(end - i);
    std::iota(order.begin(), order.end(), i);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      const bool movedA = movedIds.count(instrs[a].assertion->id) != 0U;
      const bool movedB = movedIds.count(instrs[b].assertion->id) != 0U;
      if (movedA != movedB) {
        return movedA;
      }
      if (movedA) {
        return instrs[a].assertion->id > instrs[b].assertion->id;
      }
      return false;
    });
    std::vector<Instruction> sorted;
    sorted.reserve(order.size());
    for (const size_t index : order) {
      sorted.push_back(std::move(instrs[index]));
    }
    std::move(sorted.begin(), sorted.end(),
              instrs.begin() + static_cast<std::ptrdiff_t>(i));
    i = end;
  }

  // Resolve final indices by assertion id and blocker line.
  std::map<int, size_t> finalById;
  for (size_t i = 0; i < instrs.size(); ++i) {
    if (instrs[i].kind == InstrKind::Assertion) {
      finalById[instrs[i].assertion->id] = i;
    }
  }
  for (auto& record : result.records) {
    record.finalIndex = finalById.at(record.assertionId);
    if (record.blockedByFinalIndex.has_value()) {
      // The blocker is the first non-assertion above the final position.
      size_t j = record.finalIndex;
      while (j > 0 && instrs[j - 1].kind == InstrKind::Assertion) {
        --j;
      }
      record.blockedByFinalIndex = j > 0 ? std::optional<size_t>(j - 1)
                                         : std::nullopt;
    }
  }
  return result;
}

} // namespace qaref
