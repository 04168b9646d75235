/**
 * @file interaction.cpp
 * @brief Interaction-based addition of entanglement assertions.
 */

#include "qaref/interaction.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qaref {

std::vector<std::vector<int>>
InteractionGraph::simplePaths(int from, int to, size_t limit,
                              int numQubits) const {
  std::vector<std::vector<int>> paths;
  std::vector<bool> visited(static_cast<size_t>(numQubits), false);
  std::vector<int> current{from};
  visited[static_cast<size_t>(from)] = true;

  std::function<void(int)> dfs = [&](int node) {
    if (paths.size() >= limit) {
      return;
    }
    if (node == to) {
      paths.push_back(current);
      return;
    }
    for (const auto& [edge, label] : edges) {
      int next = -1;
      if (edge.first == node) {
        next = edge.second;
      } else if (edge.second == node) {
        next = edge.first;
      } else {
        continue;
      }
      if (visited[static_cast<size_t>(next)]) {
        continue;
      }
      visited[static_cast<size_t>(next)] = true;
      current.push_back(next);
      dfs(next);
      current.pop_back();
      visited[static_cast<size_t>(next)] = false;
    }
  };
  dfs(from);
  return paths;
}

InteractionGraph buildGraph(const FlatProgram& program, size_t upto) {
  InteractionGraph graph;
  for (size_t i = 0; i < upto && i < program.instructions.size(); ++i) {
    const Instruction& instr = program.instructions[i];
    if (instr.kind != InstrKind::Unitary || instr.acted.size() < 2) {
      continue;
    }
    for (size_t a = 0; a < instr.acted.size(); ++a) {
      for (size_t b = a + 1; b < instr.acted.size(); ++b) {
        const std::pair<int, int> key{instr.acted[a], instr.acted[b]};
        graph.edges.try_emplace(key, i);  // keeps the earliest index
      }
    }
  }
  return graph;
}

namespace {

/// True if an identical entanglement assertion already sits at or above
/// `limit`; used to keep the refinement idempotent.
bool duplicateExists(const FlatProgram& program, size_t limit, int a, int b) {
  for (size_t i = 0; i <= limit && i < program.instructions.size(); ++i) {
    const Instruction& instr = program.instructions[i];
    if (instr.kind != InstrKind::Assertion ||
        instr.assertion->kind != AssertionKind::Entanglement) {
      continue;
    }
    const auto& targets = instr.assertion->targets;
    if (targets.size() == 2 &&
        ((targets[0] == a && targets[1] == b) ||
         (targets[0] == b && targets[1] == a))) {
      return true;
    }
  }
  return false;
}

} // namespace

InteractionResult refineEntanglement(const FlatProgram& program) {
  InteractionResult result;
  std::vector<AddedAssertion> planned;

  for (const size_t index : program.assertionIndices()) {
    const Instruction& instr = program.instructions[index];
    const ResolvedAssertion& assertion = *instr.assertion;
    if (assertion.kind != AssertionKind::Entanglement) {
      continue;
    }
    const auto skip = [&](const std::string& reason) {
      result.skipped.push_back(
          SkippedAssertion{assertion.id, instr.originLine, reason});
    };
    if (assertion.targets.size() != 2) {
      skip("refinement is defined for two-qubit entanglement assertions");
      continue;
    }
    const InteractionGraph graph = buildGraph(program, index);
    const auto paths = graph.simplePaths(assertion.targets[0],
                                         assertion.targets[1], 2,
                                         program.numQubits);
    if (paths.empty()) {
      skip("targets are not connected in the interaction graph");
      continue;
    }
    if (paths.size() > 1) {
      skip("targets are connected by more than one simple path");
      continue;
    }
    if (paths.front().size() <= 2) {
      skip("the connecting path has no interior vertices");
      continue;
    }
    const std::vector<int>& path = paths.front();
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      const int a = path[i];
      const int b = path[i + 1];
      // A pair equal to the asserted pair would duplicate the original.
      if (std::min(a, b) == std::min(assertion.targets[0],
                                     assertion.targets[1]) &&
          std::max(a, b) == std::max(assertion.targets[0],
                                     assertion.targets[1])) {
        continue;
      }
      const size_t creator = graph.edgeLabel(a, b);
      // Skip insertions directly adjacent to the source assertion; they
      // cannot narrow the candidate region.
      bool instructionBetween = false;
      for (size_t j = creator + 1; j < index; ++j) {
        instructionBetween = instructionBetween ||
                             program.instructions[j].kind !=
                                 InstrKind::Assertion;
      }
      if (!instructionBetween) {
        continue;
      }
      if (duplicateExists(program, index, a, b)) {
        continue;
      }
      const bool alreadyPlanned =
          std::any_of(planned.begin(), planned.end(),
                      [&](const AddedAssertion& added) {
                        return added.insertAfter == creator &&
                               std::min(added.targets[0], added.targets[1]) ==
                                   std::min(a, b) &&
                               std::max(added.targets[0], added.targets[1]) ==
                                   std::max(a, b);
                      });
      if (alreadyPlanned) {
        continue;
      }
      AddedAssertion added;
      added.targets = {a, b};
      added.insertAfter = creator;
      added.insertAfterLine = program.instructions[creator].originLine;
      added.sourceAssertionId = assertion.id;
      added.sourceAssertionLine = instr.originLine;
      planned.push_back(added);
    }
  }

  // Materialize all insertions at once, keeping input indices valid.
  result.program = program;
  std::stable_sort(planned.begin(), planned.end(),
                   [](const AddedAssertion& a, const AddedAssertion& b) {
                     return a.insertAfter < b.insertAfter;
                   });
  size_t shift = 1;
  for (const AddedAssertion& added : planned) {
    Instruction instr;
    instr.kind = InstrKind::Assertion;
    ResolvedAssertion assertion;
    assertion.kind = AssertionKind::Entanglement;
    assertion.targets = {added.targets[0], added.targets[1]};
    assertion.origin = AssertionOrigin::Interaction;
    assertion.id = result.program.nextAssertionId++;
    instr.acted = assertion.targets;
    std::sort(instr.acted.begin(), instr.acted.end());
    Assertion surface;
    surface.kind = AssertionKind::Entanglement;
    surface.targets = {result.program.qubitName(added.targets[0]),
                       result.program.qubitName(added.targets[1])};
    instr.stmt.node = surface;
    instr.stmt.line = 0;
    instr.originLine = 0;
    instr.stmtOrdinal = -1;
    instr.assertion = std::move(assertion);
    result.program.instructions.insert(
        result.program.instructions.begin() +
            static_cast<std::ptrdiff_t>(added.insertAfter + shift),
        std::move(instr));
    ++shift;
  }
  result.added = std::move(planned);
  return result;
}

} // namespace qaref
