#include "qaref/evaluation.hpp"

#include "qaref/parser.hpp"
#include "qaref/pipeline.hpp"

#include <cmath>
#include <cstdio>

namespace qaref {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Aggregate aggregateReports(const std::vector<DiagnosisReport>& reports) {
  Aggregate aggregate;
  aggregate.totalMutants = static_cast<int>(reports.size());
  std::vector<double> reductions;
  for (const DiagnosisReport& report : reports) {
    if (report.detectedOriginal && report.detectedRefined) {
      ++aggregate.detectedBoth;
    }
    if (report.reduction.has_value()) {
      reductions.push_back(*report.reduction);
    }
  }
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
  return aggregate;
}

} // namespace

std::uint64_t mixSeed(std::uint64_t base, const std::string& family, int size,
                      int kind) {
  std::uint64_t h = base;
  for (const char c : family) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  }
  h = splitmix64(h ^ static_cast<std::uint64_t>(size));
  h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
  return h;
}

FamilyKindEvaluation evaluateFamily(BenchmarkFamily family,
                                    AssertionKind kind,
                                    const std::vector<int>& sizes,
                                    int repetitions, const Config& config) {
  FamilyKindEvaluation evaluation;
  for (const int size : sizes) {
    std::string text;
    try {
      text = generateBenchmark(family, size, kind, config);
    } catch (const AnalysisError& error) {
      evaluation.applicable = false;
      evaluation.refusal = error.what();
      evaluation.movingReports.clear();
      evaluation.fullReports.clear();
      return evaluation;
    }
    evaluation.applicable = true;
    const FlatProgram base = flatten(parse(text), config.diagonalityTol);
    const std::uint64_t seed =
        mixSeed(config.seed, benchmarkFamilyName(family), size,
                static_cast<int>(kind));
    const auto mutants =
        generateMutants(base, repetitions, seed, config);

    RefineOptions movingOnly;
    movingOnly.addInteraction = false;
    movingOnly.addSeparation = false;
    const FlatProgram moved =
        refineProgram(base, config, movingOnly).program;
    const FlatProgram full = refineProgram(base, config).program;

    const auto movingEval =
        evaluateMutants(base, moved, mutants, seed, config);
    const auto fullEval = evaluateMutants(base, full, mutants, seed, config);
    evaluation.movingReports.insert(evaluation.movingReports.end(),
                                    movingEval.reports.begin(),
                                    movingEval.reports.end());
    evaluation.fullReports.insert(evaluation.fullReports.end(),
                                  fullEval.reports.begin(),
                                  fullEval.reports.end());
  }
  evaluation.moving = aggregateReports(evaluation.movingReports);
  evaluation.full = aggregateReports(evaluation.fullReports);
  return evaluation;
}

ProgramEvaluation evaluateProgramText(const std::string& text,
                                      int repetitions, std::uint64_t seed,
                                      const Config& config) {
  ProgramEvaluation evaluation;
  const FlatProgram base = flatten(parse(text), config.diagonalityTol);
  const auto mutants = generateMutants(base, repetitions, seed, config);

  RefineOptions movingOnly;
  movingOnly.addInteraction = false;
  movingOnly.addSeparation = false;
  const FlatProgram moved = refineProgram(base, config, movingOnly).program;
  const FlatProgram full = refineProgram(base, config).program;
  evaluation.movingReports =
      evaluateMutants(base, moved, mutants, seed, config).reports;
  evaluation.fullReports =
      evaluateMutants(base, full, mutants, seed, config).reports;
  evaluation.moving = aggregateReports(evaluation.movingReports);
  evaluation.full = aggregateReports(evaluation.fullReports);
  return evaluation;
}

std::string formatAggregateCell(const Aggregate& aggregate, bool applicable) {
  if (!applicable) {
    return "N/A";
  }
  if (aggregate.definedReductions == 0) {
    return "no detected mutants";
  }
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.1f%% +/- %.1f%%",
                aggregate.meanReduction * 100.0,
                aggregate.stddevReduction * 100.0);
  return buffer;
}

} // namespace qaref
