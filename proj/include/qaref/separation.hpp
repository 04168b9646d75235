/**
 * @file separation.hpp
 * @brief State-separation-based splitting of equality assertions.
 */

#pragma once

#include "qaref/config.hpp"
#include "qaref/program.hpp"

#include <optional>
#include <vector>

namespace qaref {

struct SeparableQubit {
  int position = 0;           ///< target position within the assertion
  Eigen::Vector2cd state;     ///< extracted unit factor, first nonzero
                              ///< component real and positive
};

/**
 * @brief Find all separable qubits of a unit-norm amplitude vector.
 *
 * Qubit position j is separable iff the 2 x 2^(k-1) matrix grouping the
 * amplitudes on bit j has numerical rank 1 (second singular value below the
 * separability tolerance). Extraction is greedy in ascending position order,
 * re-testing the shrinking residual after each extraction. The residual
 * carries the phase so that re-tensoring the factors with it reproduces the
 * input exactly (tested to 1e-9 max modulus).
 */
std::vector<SeparableQubit> separableQubits(const StateVector& amplitudes,
                                            double tolerance = 1e-9);

/// Residual state over the non-separable positions after greedy extraction.
struct SeparationOutcome {
  std::vector<SeparableQubit> separable;
  std::vector<int> residualPositions;
  StateVector residual;
};

SeparationOutcome separate(const StateVector& amplitudes,
                           double tolerance = 1e-9);

struct SeparabilitySplit {
  int sourceAssertionId = 0;
  int sourceAssertionLine = 0;
  size_t sourceIndex = 0;  ///< input instruction index
  std::vector<std::pair<int, Eigen::Vector2cd>> separable;  ///< global qubit
  std::vector<int> residualTargets;  ///< global qubits left entangled
  bool droppedOriginal = false;
};

struct SeparationResult {
  FlatProgram program;
  std::vector<SeparabilitySplit> splits;
};

/**
 * @brief Split separable qubits out of every multi-qubit equality assertion.
 *
 * Each separable qubit yields a single-qubit `assert-eq q { a, b }` inserted
 * directly above the original assertion. The original is kept unless
 * `config.dropSubsumed` is set and every qubit separated out.
 */
SeparationResult refineEquality(const FlatProgram& program,
                                const Config& config = {});

} // namespace qaref
