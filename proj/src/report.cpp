#include "qaref/report.hpp"

#include "qaref/printer.hpp"

#include <sstream>

namespace qaref {

nlohmann::json reportToJson(const RefineReport& report,
                            const std::string& input) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["input"] = input;
  doc["moves"] = nlohmann::json::array();
  for (const MoveRecord& record : report.moves) {
    nlohmann::json entry;
    entry["assertion_id"] = record.assertionId;
    entry["origin_line"] = record.originLine;
    entry["index_before"] = record.indexBefore;
    entry["index_after"] = record.indexAfter;
    entry["final_index"] = record.finalIndex;
    entry["moved"] = record.moved();
    entry["rules_fired"] = record.rulesFired;
    if (record.blockedByLine.has_value()) {
      entry["blocked_by_line"] = *record.blockedByLine;
    } else {
      entry["blocked_by_line"] = nullptr;
    }
    doc["moves"].push_back(entry);
  }
  doc["interaction_added"] = nlohmann::json::array();
  for (const AddedAssertion& added : report.interactionAdded) {
    nlohmann::json entry;
    entry["targets"] = added.targets;
    entry["insert_after_index"] = added.insertAfter;
    entry["insert_after_line"] = added.insertAfterLine;
    entry["source_assertion_id"] = added.sourceAssertionId;
    entry["source_assertion_line"] = added.sourceAssertionLine;
    doc["interaction_added"].push_back(entry);
  }
  doc["interaction_skipped"] = nlohmann::json::array();
  for (const SkippedAssertion& skipped : report.interactionSkipped) {
    nlohmann::json entry;
    entry["assertion_id"] = skipped.assertionId;
    entry["line"] = skipped.line;
    entry["reason"] = skipped.reason;
    doc["interaction_skipped"].push_back(entry);
  }
  doc["separation_splits"] = nlohmann::json::array();
  for (const SeparabilitySplit& split : report.separationSplits) {
    nlohmann::json entry;
    entry["source_assertion_id"] = split.sourceAssertionId;
    entry["source_assertion_line"] = split.sourceAssertionLine;
    entry["dropped_original"] = split.droppedOriginal;
    entry["residual_targets"] = split.residualTargets;
    entry["separable"] = nlohmann::json::array();
    for (const auto& [qubit, state] : split.separable) {
      nlohmann::json part;
      part["qubit"] = qubit;
      part["amplitudes"] = {formatComplex(state(0)), formatComplex(state(1))};
      entry["separable"].push_back(part);
    }
    doc["separation_splits"].push_back(entry);
  }
  return doc;
}

nlohmann::json verdictsToJson(const std::vector<Verdict>& verdicts,
                              const std::string& input) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["input"] = input;
  doc["verdicts"] = nlohmann::json::array();
  for (const Verdict& verdict : verdicts) {
    nlohmann::json entry;
    entry["instruction_index"] = verdict.instructionIndex;
    entry["line"] = verdict.line;
    entry["kind"] = assertionKindName(verdict.kind);
    entry["outcome"] = verdict.pass ? "pass" : "fail";
    switch (verdict.kind) {
    case AssertionKind::Equality:
      entry["fidelity"] = verdict.fidelity;
      break;
    case AssertionKind::Entanglement:
      entry["correlation_norm"] = verdict.correlationNorm;
      break;
    case AssertionKind::Superposition:
      entry["support_count"] = verdict.supportCount;
      break;
    }
    doc["verdicts"].push_back(entry);
  }
  return doc;
}

std::string csvHeader() {
  return "label,mutant_id,mutation,site_line,detected_original,"
         "detected_refined,first_failing_line_original,"
         "first_failing_line_refined,distance_original,distance_refined,"
         "reduction\n";
}

std::string reportsToCsv(const std::vector<DiagnosisReport>& reports,
                         const std::string& label) {
  std::ostringstream out;
  const auto opt = [](const std::optional<int>& value) -> std::string {
    return value.has_value() ? std::to_string(*value) : "";
  };
  const auto optReal = [](const std::optional<double>& value) -> std::string {
    return value.has_value() ? formatDouble(*value) : "";
  };
  for (const DiagnosisReport& report : reports) {
    out << label << ',' << report.mutantId << ','
        << mutationKindName(report.mutation) << ',' << report.siteLine << ','
        << (report.detectedOriginal ? 1 : 0) << ','
        << (report.detectedRefined ? 1 : 0) << ','
        << opt(report.firstFailingLineOriginal) << ','
        << opt(report.firstFailingLineRefined) << ','
        << opt(report.distanceOriginal) << ',' << opt(report.distanceRefined)
        << ',' << optReal(report.reduction) << '\n';
  }
  return out.str();
}

} // namespace qaref
