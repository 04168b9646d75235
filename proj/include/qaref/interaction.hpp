/**
 * @file interaction.hpp
 * @brief Interaction-graph construction and entanglement assertion addition.
 */

#pragma once

#include "qaref/program.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qaref {

/**
 * @brief Undirected multi-qubit interaction graph.
 *
 * An edge (a, b) exists iff some multi-qubit unitary instruction acts on
 * both a and b before the analysis point; its label is the EARLIEST such
 * instruction index. Measurement-like and non-functional instructions
 * contribute no edges; a k-qubit unitary contributes all C(k,2) pairs.
 */
struct InteractionGraph {
  std::map<std::pair<int, int>, size_t> edges;  ///< (min,max) -> instr index

  [[nodiscard]] bool hasEdge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) != 0U;
  }
  [[nodiscard]] size_t edgeLabel(int a, int b) const {
    return edges.at({std::min(a, b), std::max(a, b)});
  }

  /// All simple paths from `from` to `to`, stopping early once `limit`
  /// paths have been found.
  [[nodiscard]] std::vector<std::vector<int>>
  simplePaths(int from, int to, size_t limit, int numQubits) const;
};

/// Graph over all multi-qubit unitary instructions with index < upto.
InteractionGraph buildGraph(const FlatProgram& program, size_t upto);

struct AddedAssertion {
  std::array<int, 2> targets{};  ///< adjacent path pair (pi_i, pi_i+1)
  size_t insertAfter = 0;        ///< edge-creating instruction (input index)
  int insertAfterLine = 0;
  int sourceAssertionId = 0;
  int sourceAssertionLine = 0;
};

/// Entanglement assertion the refiner could not act on, with the reason.
struct SkippedAssertion {
  int assertionId = 0;
  int line = 0;
  std::string reason;
};

struct InteractionResult {
  FlatProgram program;
  std::vector<AddedAssertion> added;
  std::vector<SkippedAssertion> skipped;
};

/**
 * @brief Refine two-qubit entanglement assertions along unique paths.
 *
 * For each entanglement assertion over exactly two qubits connected by
 * exactly one simple path with interior vertices, inserts
 * `assert-ent q_pi_i, q_pi_i+1` directly after the instruction that created
 * each path edge. Insertions that would sit directly next to the source
 * assertion (no non-assertion instruction in between) are skipped, as are
 * insertions duplicating an assertion that already exists at or above the
 * source. Assertions with zero or several paths, or with a target count
 * other than two, are left untouched.
 */
InteractionResult refineEntanglement(const FlatProgram& program);

} // namespace qaref
