/**
 * @file pipeline.hpp
 * @brief Full refinement pipeline: add by interaction, add by separation,
 * then move everything (so added assertions are hoisted too).
 */

#pragma once

#include "qaref/config.hpp"
#include "qaref/interaction.hpp"
#include "qaref/mover.hpp"
#include "qaref/separation.hpp"

namespace qaref {

struct RefineOptions {
  bool addInteraction = true;
  bool addSeparation = true;
  bool move = true;
};

struct RefineReport {
  std::vector<AddedAssertion> interactionAdded;
  std::vector<SkippedAssertion> interactionSkipped;
  std::vector<SeparabilitySplit> separationSplits;
  std::vector<MoveRecord> moves;
};

struct RefineResult {
  FlatProgram program;
  RefineReport report;
};

RefineResult refineProgram(const FlatProgram& program,
                           const Config& config = {},
                           const RefineOptions& options = {});

} // namespace qaref
