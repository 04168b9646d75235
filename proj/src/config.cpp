#include "qaref/config.hpp"

#include "qaref/ast.hpp"

#include <json.hpp>

#include <fstream>

namespace qaref {

void Config::validate() const {
  const double tolerances[] = {equalityFidelityTol, separabilityTol,
                               diagonalityTol, entanglementTol,
                               superpositionTol};
  for (const double tol : tolerances) {
    if (!(tol > 0.0)) {
      throw AnalysisError("all tolerances must be strictly positive");
    }
  }
  if (qubitCap <= 0) {
    throw AnalysisError("qubit cap must be positive");
  }
}

Config loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw AnalysisError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& error) {
    throw AnalysisError("invalid config file '" + path + "': " +
                        error.what());
  }
  Config config;
  if (doc.contains("tolerances")) {
    const auto& tol = doc["tolerances"];
    config.equalityFidelityTol =
        tol.value("equality_fidelity", config.equalityFidelityTol);
    config.separabilityTol =
        tol.value("separability", config.separabilityTol);
    config.diagonalityTol = tol.value("diagonality", config.diagonalityTol);
    config.entanglementTol =
        tol.value("entanglement", config.entanglementTol);
    config.superpositionTol =
        tol.value("superposition", config.superpositionTol);
  }
  if (doc.contains("flags")) {
    const auto& flags = doc["flags"];
    config.dropSubsumed = flags.value("drop_subsumed", config.dropSubsumed);
    config.annotations = flags.value("annotations", config.annotations);
    const std::string criterion =
        flags.value("entanglement_criterion", std::string("correlation"));
    if (criterion == "ppt") {
      config.entanglementCriterion = EntanglementCriterion::Ppt;
    } else if (criterion == "correlation") {
      config.entanglementCriterion = EntanglementCriterion::Correlation;
    } else {
      throw AnalysisError("unknown entanglement criterion '" + criterion +
                          "'");
    }
  }
  config.seed = doc.value("seed", config.seed);
  config.qubitCap = doc.value("qubit_cap", config.qubitCap);
  config.validate();
  return config;
}

} // namespace qaref
