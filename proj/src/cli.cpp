/**
 * @file cli.cpp
 * @brief Subcommand wiring for the qaref tool.
 */

#include "qaref/cli.hpp"

#include "qaref/benchmarks.hpp"
#include "qaref/evaluation.hpp"
#include "qaref/parser.hpp"
#include "qaref/pipeline.hpp"
#include "qaref/printer.hpp"
#include "qaref/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qaref {

namespace {

constexpr int kExitAllPass = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitAnalysisError = 3;

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw AnalysisError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw AnalysisError("cannot write '" + path + "'");
  }
  out << content;
}

struct CommonOptions {
  std::string configPath;
  double equalityTol = -1.0;
  double separabilityTol = -1.0;
  double diagonalityTol = -1.0;
  double entanglementTol = -1.0;
  std::string entCriterion;
  std::uint64_t seed = 0;
  bool seedSet = false;
  int qubitCap = -1;
};

void addCommonOptions(CLI::App* app, CommonOptions& opts) {
  app->add_option("--config", opts.configPath,
                  "JSON config file (default: $QAREF_CONFIG)");
  app->add_option("--eq-tol", opts.equalityTol,
                  "equality fidelity tolerance (default 1e-6)");
  app->add_option("--sep-tol", opts.separabilityTol,
                  "separability sigma_2 threshold (default 1e-9)");
  app->add_option("--diag-tol", opts.diagonalityTol,
                  "diagonality threshold (default 1e-9)");
  app->add_option("--ent-tol", opts.entanglementTol,
                  "entanglement correlation threshold (default 1e-6)");
  app->add_option("--ent-criterion", opts.entCriterion,
                  "entanglement criterion: correlation (default) or ppt");
  app->add_option("--qubit-cap", opts.qubitCap,
                  "simulation qubit cap (default 16)");
  app->add_option_function<std::uint64_t>(
         "--seed",
         [&opts](const std::uint64_t value) {
           opts.seed = value;
           opts.seedSet = true;
         },
         "RNG seed (default 0)");
}

Config resolveConfig(const CommonOptions& opts) {
  Config config;
  std::string path = opts.configPath;
  if (path.empty()) {
    if (const char* env = std::getenv("QAREF_CONFIG")) {
      path = env;
    }
  }
  if (!path.empty()) {
    config = loadConfig(path);
  }
  if (opts.equalityTol > 0) {
    config.equalityFidelityTol = opts.equalityTol;
  }
  if (opts.separabilityTol > 0) {
    config.separabilityTol = opts.separabilityTol;
  }
  if (opts.diagonalityTol > 0) {
    config.diagonalityTol = opts.diagonalityTol;
  }
  if (opts.entanglementTol > 0) {
    config.entanglementTol = opts.entanglementTol;
  }
  if (!opts.entCriterion.empty()) {
    if (opts.entCriterion == "ppt") {
      config.entanglementCriterion = EntanglementCriterion::Ppt;
    } else if (opts.entCriterion == "correlation") {
      config.entanglementCriterion = EntanglementCriterion::Correlation;
    } else {
      throw AnalysisError("unknown entanglement criterion '" +
                          opts.entCriterion + "'");
    }
  }
  if (opts.seedSet) {
    config.seed = opts.seed;
  }
  if (opts.qubitCap > 0) {
    config.qubitCap = opts.qubitCap;
  }
  config.validate();
  return config;
}

AssertionKind assertionKindFromName(const std::string& name) {
  if (name == "eq" || name == "equality") {
    return AssertionKind::Equality;
  }
  if (name == "ent" || name == "entanglement") {
    return AssertionKind::Entanglement;
  }
  if (name == "sup" || name == "superposition") {
    return AssertionKind::Superposition;
  }
  throw AnalysisError("unknown assertion kind '" + name + "'");
}

std::vector<int> parseSizes(const std::string& spec) {
  std::vector<int> sizes;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    for (int s = lo; s <= hi; ++s) {
      sizes.push_back(s);
    }
    return sizes;
  }
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    sizes.push_back(std::stoi(item));
  }
  return sizes;
}

int cmdRefine(const std::string& input, const std::string& output,
              const std::string& reportPath, bool annotations,
              bool dropSubsumed, bool noInteraction, bool noSeparation,
              bool noMove, const CommonOptions& common) {
  Config config = resolveConfig(common);
  config.annotations = config.annotations || annotations;
  config.dropSubsumed = config.dropSubsumed || dropSubsumed;
  const FlatProgram program =
      flatten(parse(readFile(input)), config.diagonalityTol);
  RefineOptions options;
  options.addInteraction = !noInteraction;
  options.addSeparation = !noSeparation;
  options.move = !noMove;
  const RefineResult result = refineProgram(program, config, options);
  PrintOptions printOptions;
  printOptions.annotations = config.annotations;
  const std::string refined = print(result.program, printOptions);
  if (output.empty()) {
    std::cout << refined;
  } else {
    writeFile(output, refined);
  }
  if (!reportPath.empty()) {
    writeFile(reportPath, reportToJson(result.report, input).dump(2) + "\n");
  }
  return kExitAllPass;
}

int cmdCheck(const std::string& input, const std::string& jsonPath,
             const CommonOptions& common) {
  const Config config = resolveConfig(common);
  const FlatProgram program =
      flatten(parse(readFile(input)), config.diagonalityTol);
  const auto verdicts = simulate(program, config.seed, config);
  bool allPass = true;
  for (const Verdict& verdict : verdicts) {
    std::cout << "line " << verdict.line << ": "
              << assertionKindName(verdict.kind) << " assertion "
              << (verdict.pass ? "PASS" : "FAIL");
    switch (verdict.kind) {
    case AssertionKind::Equality:
      std::cout << " (fidelity " << verdict.fidelity << ")";
      break;
    case AssertionKind::Entanglement:
      std::cout << " (correlation " << verdict.correlationNorm << ")";
      break;
    case AssertionKind::Superposition:
      std::cout << " (support " << verdict.supportCount << ")";
      break;
    }
    std::cout << "\n";
    allPass = allPass && verdict.pass;
  }
  if (verdicts.empty()) {
    std::cout << "no assertions\n";
  } else if (!allPass) {
    const CandidateRegion region = diagnose(program, verdicts);
    std::cout << "error candidates: " << region.instructionCount
              << " instruction(s) on " << region.lineCount
              << " source line(s) above the first failing assertion\n";
  }
  if (!jsonPath.empty()) {
    writeFile(jsonPath, verdictsToJson(verdicts, input).dump(2) + "\n");
  }
  return allPass ? kExitAllPass : kExitAssertionFailure;
}

int cmdMutate(const std::string& input, const std::string& outDir,
              int repetitions, const CommonOptions& common) {
  const Config config = resolveConfig(common);
  const FlatProgram program =
      flatten(parse(readFile(input)), config.diagonalityTol);
  const auto mutants =
      generateMutants(program, repetitions, config.seed, config);
  nlohmann::json manifest;
  manifest["schema"] = 1;
  manifest["input"] = input;
  manifest["seed"] = config.seed;
  manifest["mutants"] = nlohmann::json::array();
  std::string stem = input;
  const auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  for (size_t i = 0; i < mutants.size(); ++i) {
    const FlatProgram mutated = applyMutant(program, mutants[i]);
    const std::string name =
        stem + ".mutant" + std::to_string(i) + ".qasm";
    const std::string path = outDir.empty() ? name : outDir + "/" + name;
    writeFile(path, print(mutated));
    nlohmann::json entry;
    entry["file"] = name;
    entry["mutation"] = mutationKindName(mutants[i].kind);
    entry["site_line"] = mutants[i].siteLine;
    manifest["mutants"].push_back(entry);
  }
  const std::string manifestPath =
      (outDir.empty() ? std::string() : outDir + "/") + stem +
      ".mutants.json";
  writeFile(manifestPath, manifest.dump(2) + "\n");
  std::cout << "wrote " << mutants.size() << " mutant(s)\n";
  return kExitAllPass;
}

int cmdEval(const std::string& family, const std::string& sizesSpec,
            const std::string& kinds, int repetitions,
            const std::vector<std::string>& inputs,
            const std::string& csvPath, const std::string& tablePath,
            const CommonOptions& common) {
  const Config config = resolveConfig(common);
  std::ostringstream csv;
  csv << csvHeader();
  std::ostringstream table;
  table << "| Algorithm family | Entanglement: moving | Entanglement: "
           "adding+moving | Equality: moving | Equality: adding+moving |\n";
  table << "|---|---|---|---|---|\n";

  const auto evalKinds = [&](const std::string& label,
                             const FamilyKindEvaluation& ent,
                             const FamilyKindEvaluation& eq) {
    table << "| " << label << " | "
          << formatAggregateCell(ent.moving, ent.applicable) << " | "
          << formatAggregateCell(ent.full, ent.applicable) << " | "
          << formatAggregateCell(eq.moving, eq.applicable) << " | "
          << formatAggregateCell(eq.full, eq.applicable) << " |\n";
    csv << reportsToCsv(ent.movingReports, label + "-ent-moving");
    csv << reportsToCsv(ent.fullReports, label + "-ent-full");
    csv << reportsToCsv(eq.movingReports, label + "-eq-moving");
    csv << reportsToCsv(eq.fullReports, label + "-eq-full");
  };

  if (!inputs.empty()) {
    // Explicit input files: one row per file, both pipelines pooled over
    // whatever assertion kinds the program contains.
    for (const std::string& input : inputs) {
      const std::string text = readFile(input);
      const ProgramEvaluation eval =
          evaluateProgramText(text, repetitions, config.seed, config);
      table << "| " << input << " | "
            << formatAggregateCell(eval.moving, true) << " | "
            << formatAggregateCell(eval.full, true) << " | - | - |\n";
      csv << reportsToCsv(eval.movingReports, input + "-moving");
      csv << reportsToCsv(eval.fullReports, input + "-full");
    }
  } else {
    const std::vector<int> sizes = parseSizes(sizesSpec);
    std::vector<BenchmarkFamily> families;
    if (family == "all") {
      families = {BenchmarkFamily::Ghz, BenchmarkFamily::GraphState,
                  BenchmarkFamily::DjLike, BenchmarkFamily::QftLike};
    } else {
      families = {benchmarkFamilyFromName(family)};
    }
    for (const BenchmarkFamily fam : families) {
      FamilyKindEvaluation ent;
      FamilyKindEvaluation eq;
      if (kinds == "ent" || kinds == "both") {
        ent = evaluateFamily(fam, AssertionKind::Entanglement, sizes,
                             repetitions, config);
      }
      if (kinds == "eq" || kinds == "both") {
        eq = evaluateFamily(fam, AssertionKind::Equality, sizes, repetitions,
                            config);
      }
      evalKinds(benchmarkFamilyName(fam), ent, eq);
    }
  }

  std::cout << table.str();
  if (!tablePath.empty()) {
    writeFile(tablePath, table.str());
  }
  if (!csvPath.empty()) {
    writeFile(csvPath, csv.str());
  }
  return kExitAllPass;
}

int cmdGenerate(const std::string& family, int qubits,
                const std::string& kind, const std::string& output,
                const CommonOptions& common) {
  const Config config = resolveConfig(common);
  const std::string text = generateBenchmark(
      benchmarkFamilyFromName(family), qubits, assertionKindFromName(kind),
      config);
  if (output.empty()) {
    std::cout << text;
  } else {
    writeFile(output, text);
  }
  return kExitAllPass;
}

} // namespace

int runCli(const std::vector<std::string>& args) {
  CLI::App app{"qaref - assertion refinement for quantum programs"};
  app.require_subcommand(1);

  // refine
  auto* refine = app.add_subcommand(
      "refine", "move and add assertions; writes the refined program");
  std::string refineInput;
  std::string refineOutput;
  std::string refineReport;
  bool annotations = false;
  bool dropSubsumed = false;
  bool noInteraction = false;
  bool noSeparation = false;
  bool noMove = false;
  CommonOptions refineCommon;
  refine->add_option("input", refineInput, "input .qasm file")->required();
  refine->add_option("-o,--output", refineOutput,
                     "refined program path (default: stdout)");
  refine->add_option("--report", refineReport, "JSON report path");
  refine->add_flag("--annotations", annotations,
                   "annotate moved/added assertions");
  refine->add_flag("--drop-subsumed", dropSubsumed,
                   "drop fully separated equality assertions");
  refine->add_flag("--no-interaction", noInteraction,
                   "skip interaction-based addition");
  refine->add_flag("--no-separation", noSeparation,
                   "skip separation-based addition");
  refine->add_flag("--no-move", noMove, "skip assertion movement");
  addCommonOptions(refine, refineCommon);

  // check
  auto* check = app.add_subcommand(
      "check", "simulate and report one verdict per assertion");
  std::string checkInput;
  std::string checkJson;
  CommonOptions checkCommon;
  check->add_option("input", checkInput, "input .qasm file")->required();
  check->add_option("--json", checkJson, "verdict JSON path");
  addCommonOptions(check, checkCommon);

  // mutate
  auto* mutate = app.add_subcommand(
      "mutate", "write single-instruction mutants of a program");
  std::string mutateInput;
  std::string mutateOut;
  int mutateReps = 10;
  CommonOptions mutateCommon;
  mutate->add_option("input", mutateInput, "input .qasm file")->required();
  mutate->add_option("-o,--out-dir", mutateOut, "output directory");
  mutate->add_option("--reps", mutateReps, "mutation repetitions");
  addCommonOptions(mutate, mutateCommon);

  // eval
  auto* eval = app.add_subcommand(
      "eval", "generate, mutate, refine and measure distance reduction");
  std::string evalFamily = "all";
  std::string evalSizes = "4..8";
  std::string evalKinds = "both";
  int evalReps = 10;
  std::vector<std::string> evalInputs;
  std::string evalCsv;
  std::string evalTable;
  CommonOptions evalCommon;
  eval->add_option("inputs", evalInputs,
                   "evaluate these .qasm files instead of a family");
  eval->add_option("--family", evalFamily,
                   "ghz, graph-state, dj-like, qft-like or all");
  eval->add_option("--sizes", evalSizes, "qubit sizes, e.g. 4..8 or 4,6");
  eval->add_option("--assertion", evalKinds, "ent, eq or both");
  eval->add_option("--reps", evalReps, "mutation repetitions per instance");
  eval->add_option("--csv", evalCsv, "per-mutant CSV path");
  eval->add_option("--table", evalTable, "aggregate Markdown table path");
  addCommonOptions(eval, evalCommon);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "emit a benchmark program with a trailing assertion");
  std::string genFamily = "ghz";
  int genQubits = 5;
  std::string genKind = "ent";
  std::string genOutput;
  CommonOptions genCommon;
  generate->add_option("--family", genFamily,
                       "ghz, graph-state, dj-like or qft-like");
  generate->add_option("--qubits", genQubits, "register size");
  generate->add_option("--assertion", genKind, "ent, eq or sup");
  generate->add_option("-o,--output", genOutput,
                       "output path (default: stdout)");
  addCommonOptions(generate, genCommon);

  try {
    std::vector<const char*> argv;
    argv.push_back("qaref");
    for (const auto& arg : args) {
      argv.push_back(arg.c_str());
    }
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& error) {
    return app.exit(error);
  }

  try {
    if (refine->parsed()) {
      return cmdRefine(refineInput, refineOutput, refineReport, annotations,
                       dropSubsumed, noInteraction, noSeparation, noMove,
                       refineCommon);
    }
    if (check->parsed()) {
      return cmdCheck(checkInput, checkJson, checkCommon);
    }
    if (mutate->parsed()) {
      return cmdMutate(mutateInput, mutateOut, mutateReps, mutateCommon);
    }
    if (eval->parsed()) {
      return cmdEval(evalFamily, evalSizes, evalKinds, evalReps, evalInputs,
                     evalCsv, evalTable, evalCommon);
    }
    if (generate->parsed()) {
      return cmdGenerate(genFamily, genQubits, genKind, genOutput, genCommon);
    }
  } catch (const ParseError& error) {
    std::cerr << "parse error: " << error.what() << "\n";
    return kExitParseError;
  } catch (const AnalysisError& error) {
    std::cerr << "analysis error: " << error.what() << "\n";
    return kExitAnalysisError;
  }
  return kExitAllPass;
}

} // namespace qaref
