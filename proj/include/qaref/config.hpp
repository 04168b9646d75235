/**
 * @file config.hpp
 * @brief Tolerances and flags shared across the pipeline.
 */

#pragma once

#include <cstdint>
#include <string>

namespace qaref {

enum class EntanglementCriterion { Correlation, Ppt };

struct Config {
  // Tolerances (all strictly positive).
  double equalityFidelityTol = 1e-6;  ///< equality passes at fidelity >= 1-eps
  double separabilityTol = 1e-9;      ///< sigma_2 threshold for rank-1 tests
  double diagonalityTol = 1e-9;       ///< off-(anti-)diagonal modulus bound
  double entanglementTol = 1e-6;      ///< Frobenius correlation threshold
  double superpositionTol = 1e-9;     ///< diagonal-entry support threshold

  EntanglementCriterion entanglementCriterion =
      EntanglementCriterion::Correlation;
  bool dropSubsumed = false;
  bool annotations = false;

  std::uint64_t seed = 0;
  int qubitCap = 16;

  /// Throws AnalysisError if any tolerance is not strictly positive.
  void validate() const;
};

/// Parse a JSON config file (schema in docs/formats.md); missing keys keep
/// their defaults. The QAREF_CONFIG environment variable names the default
/// config path used by the CLI when --config is not given.
Config loadConfig(const std::string& path);

} // namespace qaref
