/**
 * @file mutation.hpp
 * @brief Mutation protocol: single-instruction faults, equivalence
 * filtering, and the diagnosis-distance evaluation.
 */

#pragma once

#include "qaref/config.hpp"
#include "qaref/program.hpp"
#include "qaref/simulator.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qaref {

enum class MutationKind { RemoveSingleQubitGate, SwapFirstLastQubit };

const char* mutationKindName(MutationKind kind);

struct Mutant {
  size_t instructionIndex = 0;  ///< index in the base program
  size_t nonAssertionOrdinal = 0;  ///< identity across refinement
  MutationKind kind = MutationKind::RemoveSingleQubitGate;
  int siteLine = 0;
};

/**
 * @brief Sample single-instruction mutants.
 *
 * Draws `repetitions` instructions uniformly (with replacement, seeded)
 * from the mutable unitary instructions: single-qubit gates are removed,
 * multi-qubit gates get their first and last operands swapped. Mutants
 * whose final statevector matches the base program's up to global phase
 * (fidelity > 1 - 1e-9) are discarded.
 */
std::vector<Mutant> generateMutants(const FlatProgram& program,
                                    int repetitions, std::uint64_t seed,
                                    const Config& config = {});

/// Apply a mutation. The target is found by non-assertion ordinal, so the
/// same mutant applies to the base program and to any refinement of it.
FlatProgram applyMutant(const FlatProgram& program, const Mutant& mutant);

/// Index the mutated instruction occupies (or occupied, for removals)
/// inside `applyMutant(program, mutant)`.
size_t mutantSite(const FlatProgram& program, const Mutant& mutant);

/**
 * @brief Error candidate region derived from a verdict list.
 *
 * The region spans the functional (non-assertion, non-declaration)
 * instructions strictly between the last passing assertion before the first
 * failing one (or program start) and the first failing assertion. The line
 * count collapses whole-register expansions back to source lines.
 */
struct CandidateRegion {
  bool anyFailing = false;
  size_t firstFailingIndex = 0;
  std::optional<size_t> lastPassingIndex;
  int instructionCount = 0;
  int lineCount = 0;
};

CandidateRegion diagnose(const FlatProgram& program,
                         const std::vector<Verdict>& verdicts);

/// Per-mutant outcome. `distance*` counts non-assertion instructions
/// strictly between the mutation site and the first failing assertion.
struct DiagnosisReport {
  int mutantId = 0;
  MutationKind mutation = MutationKind::RemoveSingleQubitGate;
  int siteLine = 0;
  bool detectedOriginal = false;
  bool detectedRefined = false;
  std::optional<int> firstFailingLineOriginal;
  std::optional<int> firstFailingLineRefined;
  std::optional<int> distanceOriginal;
  std::optional<int> distanceRefined;
  std::optional<double> reduction;  ///< defined iff detected twice, d_orig > 0
};

struct Aggregate {
  int totalMutants = 0;
  int detectedBoth = 0;
  int definedReductions = 0;
  double meanReduction = 0.0;
  double stddevReduction = 0.0;  ///< sample standard deviation
};

struct EvaluationResult {
  std::vector<DiagnosisReport> reports;
  Aggregate aggregate;
};

/// Run every mutant against the base program and its refinement.
EvaluationResult evaluateMutants(const FlatProgram& base,
                                 const FlatProgram& refined,
                                 const std::vector<Mutant>& mutants,
                                 std::uint64_t seed,
                                 const Config& config = {});

} // namespace qaref
