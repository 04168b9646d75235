#include "qaref/pipeline.hpp"

namespace qaref {

RefineResult refineProgram(const FlatProgram& program, const Config& config,
                           const RefineOptions& options) {
  RefineResult result;
  result.program = program;
  if (options.addInteraction) {
    InteractionResult interaction = refineEntanglement(result.program);
    result.program = std::move(interaction.program);
    result.report.interactionAdded = std::move(interaction.added);
    result.report.interactionSkipped = std::move(interaction.skipped);
  }
  if (options.addSeparation) {
    SeparationResult separation = refineEquality(result.program, config);
    result.program = std::move(separation.program);
    result.report.separationSplits = std::move(separation.splits);
  }
  if (options.move) {
    MoveResult moved = moveAll(result.program);
    result.program = std::move(moved.program);
    result.report.moves = std::move(moved.records);
  }
  return result;
}

} // namespace qaref
