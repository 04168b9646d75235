/**
 * @file report.hpp
 * @brief JSON serialization of refinement reports and verdicts
 * (schemas in docs/formats.md, versioned with "schema": 1).
 */

#pragma once

#include "qaref/mutation.hpp"
#include "qaref/pipeline.hpp"
#include "qaref/simulator.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qaref {

nlohmann::json reportToJson(const RefineReport& report,
                            const std::string& input);

nlohmann::json verdictsToJson(const std::vector<Verdict>& verdicts,
                              const std::string& input);

/// Header line for the per-mutant diagnosis CSV.
std::string csvHeader();

/// CSV rows for per-mutant diagnosis reports (no header line).
std::string reportsToCsv(const std::vector<DiagnosisReport>& reports,
                         const std::string& label);

} // namespace qaref
