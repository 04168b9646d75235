/**
 * @file evaluation.hpp
 * @brief End-to-end evaluation: generate -> mutate -> refine -> measure.
 */

#pragma once

#include "qaref/benchmarks.hpp"
#include "qaref/mutation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qaref {

/// Deterministic per-instance seed: base seed mixed with the family, size
/// and assertion kind so rows are independent of each other.
std::uint64_t mixSeed(std::uint64_t base, const std::string& family, int size,
                      int kind);

struct FamilyKindEvaluation {
  bool applicable = false;  ///< false when the family refuses the assertion
  std::string refusal;      ///< diagnostic when not applicable
  std::vector<DiagnosisReport> movingReports;  ///< move_all only
  std::vector<DiagnosisReport> fullReports;    ///< add + move
  Aggregate moving;
  Aggregate full;
};

/// Pools all detected mutants of the family across the given sizes,
/// evaluating the moving-only and adding+moving pipelines side by side.
FamilyKindEvaluation evaluateFamily(BenchmarkFamily family,
                                    AssertionKind kind,
                                    const std::vector<int>& sizes,
                                    int repetitions, const Config& config);

/// Base-vs-refined evaluation of an already-written program.
struct ProgramEvaluation {
  std::vector<DiagnosisReport> movingReports;
  std::vector<DiagnosisReport> fullReports;
  Aggregate moving;
  Aggregate full;
};

ProgramEvaluation evaluateProgramText(const std::string& text,
                                      int repetitions, std::uint64_t seed,
                                      const Config& config);

/// `mean% +/- std%` cell, or "N/A" when the evaluation is not applicable.
std::string formatAggregateCell(const Aggregate& aggregate, bool applicable);

} // namespace qaref
