/**
 * @file mutation.cpp
 * @brief Mutant generation, equivalence filtering and distance evaluation.
 */

#include "qaref/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qaref {

namespace {

size_t nonAssertionOrdinalOf(const FlatProgram& program, size_t index) {
  size_t ordinal = 0;
  for (size_t i = 0; i < index; ++i) {
    if (program.instructions[i].kind != InstrKind::Assertion) {
      ++ordinal;
    }
  }
  return ordinal;
}

size_t indexOfOrdinal(const FlatProgram& program, size_t ordinal) {
  size_t seen = 0;
  for (size_t i = 0; i < program.instructions.size(); ++i) {
    if (program.instructions[i].kind != InstrKind::Assertion) {
      if (seen == ordinal) {
        return i;
      }
      ++seen;
    }
  }
  throw AnalysisError("mutant ordinal out of range");
}

bool functional(const Instruction& instr) {
  return instr.kind == InstrKind::Unitary ||
         instr.kind == InstrKind::MeasurementLike;
}

} // namespace

const char* mutationKindName(MutationKind kind) {
  return kind == MutationKind::RemoveSingleQubitGate ? "remove" : "swap";
}

std::vector<Mutant> generateMutants(const FlatProgram& program,
                                    int repetitions, std::uint64_t seed,
                                    const Config& config) {
  std::vector<size_t> mutable_;
  for (size_t i = 0; i < program.instructions.size(); ++i) {
    if (program.instructions[i].kind == InstrKind::Unitary &&
        !program.instructions[i].acted.empty()) {
      mutable_.push_back(i);
    }
  }
  std::vector<Mutant> mutants;
  if (mutable_.empty()) {
    return mutants;
  }
  const StateVector reference = finalState(program, seed, config);
  std::mt19937_64 rng(seed);
  for (int rep = 0; rep < repetitions; ++rep) {
    const size_t pick =
        mutable_[static_cast<size_t>(rng() % mutable_.size())];
    Mutant mutant;
    mutant.instructionIndex = pick;
    mutant.nonAssertionOrdinal = nonAssertionOrdinalOf(program, pick);
    mutant.kind = program.instructions[pick].acted.size() == 1
                      ? MutationKind::RemoveSingleQubitGate
                      : MutationKind::SwapFirstLastQubit;
    mutant.siteLine = program.instructions[pick].originLine;
    // Drop mutants that do not alter the program's final state.
    const StateVector mutated =
        finalState(applyMutant(program, mutant), seed, config);
    const double overlap = std::norm(reference.dot(mutated));
    if (overlap > 1.0 - 1e-9) {
      continue;
    }
    mutants.push_back(mutant);
  }
  return mutants;
}

FlatProgram applyMutant(const FlatProgram& program, const Mutant& mutant) {
  FlatProgram out = program;
  const size_t index = indexOfOrdinal(out, mutant.nonAssertionOrdinal);
  Instruction& instr = out.instructions[index];
  if (mutant.kind == MutationKind::RemoveSingleQubitGate) {
    out.instructions.erase(out.instructions.begin() +
                           static_cast<std::ptrdiff_t>(index));
    return out;
  }
  std::swap(instr.operandQubits.front(), instr.operandQubits.back());
  auto& apply = instr.stmt.as<GateApply>();
  std::swap(apply.operands.front(), apply.operands.back());
  // The acted set is unchanged; the synthesized matrix is stale but only
  // classification reads it, and mutants are simulated, not reclassified.
  return out;
}

size_t mutantSite(const FlatProgram& program, const Mutant& mutant) {
  return indexOfOrdinal(program, mutant.nonAssertionOrdinal);
}

CandidateRegion diagnose(const FlatProgram& program,
                         const std::vector<Verdict>& verdicts) {
  CandidateRegion region;
  std::optional<size_t> firstFailing;
  std::optional<size_t> lastPassingBefore;
  for (const Verdict& verdict : verdicts) {
    if (!verdict.pass) {
      firstFailing = verdict.instructionIndex;
      break;
    }
    lastPassingBefore = verdict.instructionIndex;
  }
  if (!firstFailing.has_value()) {
    return region;
  }
  region.anyFailing = true;
  region.firstFailingIndex = *firstFailing;
  region.lastPassingIndex = lastPassingBefore;
  const size_t begin =
      lastPassingBefore.has_value() ? *lastPassingBefore + 1 : 0;
  std::set<std::pair<int, int>> lines;  // (stmtOrdinal, originLine)
  for (size_t i = begin; i < *firstFailing; ++i) {
    const Instruction& instr = program.instructions[i];
    if (functional(instr)) {
      ++region.instructionCount;
      lines.insert({instr.stmtOrdinal, instr.originLine});
    }
  }
  region.lineCount = static_cast<int>(lines.size());
  return region;
}

namespace {

/// Non-assertion instructions strictly between the mutation site and the
/// first failing assertion. For removals the site index already names the
/// removed instruction's successor, so counting starts there.
int distanceFrom(const FlatProgram& mutated, size_t site, bool removal,
                 size_t failingIndex) {
  int count = 0;
  const size_t begin = removal ? site : site + 1;
  for (size_t i = begin; i < failingIndex; ++i) {
    if (mutated.instructions[i].kind != InstrKind::Assertion) {
      ++count;
    }
  }
  return count;
}

struct SingleRun {
  bool detected = false;
  std::optional<int> firstFailingLine;
  std::optional<int> distance;
};

SingleRun runOne(const FlatProgram& program, const Mutant& mutant,
                 std::uint64_t seed, const Config& config) {
  SingleRun result;
  const FlatProgram mutated = applyMutant(program, mutant);
  const size_t site = mutantSite(program, mutant);
  const auto verdicts = simulate(mutated, seed, config);
  for (const Verdict& verdict : verdicts) {
    if (!verdict.pass) {
      result.detected = true;
      result.firstFailingLine = verdict.line;
      result.distance = distanceFrom(
          mutated, site,
          mutant.kind == MutationKind::RemoveSingleQubitGate,
          verdict.instructionIndex);
      break;
    }
  }
  return result;
}

} // namespace

EvaluationResult evaluateMutants(const FlatProgram& base,
                                 const FlatProgram& refined,
                                 const std::vector<Mutant>& mutants,
                                 std::uint64_t seed, const Config& config) {
  EvaluationResult result;
  std::vector<double> reductions;
  for (size_t m = 0; m < mutants.size(); ++m) {
    const Mutant& mutant = mutants[m];
    DiagnosisReport report;
    report.mutantId = static_cast<int>(m);
    report.mutation = mutant.kind;
    report.siteLine = mutant.siteLine;

    const SingleRun original = runOne(base, mutant, seed, config);
    const SingleRun refinedRun = runOne(refined, mutant, seed, config);
    report.detectedOriginal = original.detected;
    report.detectedRefined = refinedRun.detected;
    report.firstFailingLineOriginal = original.firstFailingLine;
    report.firstFailingLineRefined = refinedRun.firstFailingLine;
    report.distanceOriginal = original.distance;
    report.distanceRefined = refinedRun.distance;
    if (original.detected && refinedRun.detected &&
        *original.distance > 0) {
      report.reduction = (static_cast<double>(*original.distance) -
                          static_cast<double>(*refinedRun.distance)) /
                         static_cast<double>(*original.distance);
      reductions.push_back(*report.reduction);
    }
    result.reports.push_back(report);
  }

  Aggregate& aggregate = result.aggregate;
  aggregate.totalMutants = static_cast<int>(mutants.size());
  aggregate.detectedBoth = static_cast<int>(
      std::count_if(result.reports.begin(), result.reports.end(),
                    [](const DiagnosisReport& r) {
                      return r.detectedOriginal && r.detectedRefined;
                    }));
  aggregate.definedReductions = static_cast<int>(reductions.size());
  if (!reductions.empty()) {
    double sum = 0.0;
    for (const double r : reductions) {
      sum += r;
    }
    aggregate.meanReduction = sum / static_cast<double>(reductions.size());
    if (reductions.size() > 1) {
      double ss = 0.0;
      for (const double r : reductions) {
        ss += (r - aggregate.meanReduction) * (r - aggregate.meanReduction);
      }
      aggregate.stddevReduction =
          std::sqrt(ss / static_cast<double>(reductions.size() - 1));
    }
  }
  return result;
}

} // namespace qaref
