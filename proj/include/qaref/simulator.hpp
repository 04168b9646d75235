/**
 * @file simulator.hpp
 * @brief Dense statevector simulation and assertion verdicts.
 *
 * This is the oracle behind movement soundness and the mutation harness.
 * Semantics (version 1, see docs/formats.md): programs start in |0...0>,
 * unitary instructions apply in order with custom gates inlined, measure
 * and reset collapse by sampling with the seeded RNG, and assertions read
 * the state without modifying it.
 */

#pragma once

#include "qaref/config.hpp"
#include "qaref/program.hpp"

#include <cstdint>
#include <vector>

namespace qaref {

struct Verdict {
  size_t instructionIndex = 0;
  int line = 0;
  int assertionId = 0;
  AssertionOrigin origin = AssertionOrigin::Developer;
  AssertionKind kind = AssertionKind::Superposition;
  bool pass = false;
  // Kind-specific diagnostics.
  double fidelity = 0.0;        ///< equality
  double correlationNorm = 0.0; ///< entanglement: min pairwise distance
  int supportCount = 0;         ///< superposition: diagonal entries > tol
};

/// Simulate the whole program and return one verdict per assertion,
/// in execution order. Throws AnalysisError if numQubits exceeds the cap.
std::vector<Verdict> simulate(const FlatProgram& program, std::uint64_t seed,
                              const Config& config = {});

/// Final state of the program with assertions ignored.
StateVector finalState(const FlatProgram& program, std::uint64_t seed,
                       const Config& config = {});

/// Superposition check: pass iff >= 2 diagonal entries of the reduced
/// density matrix exceed the superposition tolerance.
Verdict checkSuperposition(const StateVector& state, std::span<const int> targets,
                           int numQubits, const Config& config = {});

/// Entanglement check: every unordered target pair must be correlated,
/// ||rho_ab - rho_a (x) rho_b||_F > tol (or NPT under the PPT criterion).
Verdict checkEntanglement(const StateVector& state, std::span<const int> targets,
                          int numQubits, const Config& config = {});

/// Equality check: fidelity <psi|rho_T|psi> >= 1 - eps; invariant to the
/// global phase of the state. Bit order: targets[0] is bit 0 of `amplitudes`.
Verdict checkEquality(const StateVector& state, std::span<const int> targets,
                      const StateVector& amplitudes, int numQubits,
                      const Config& config = {});

/// Evaluate one resolved assertion against a state.
Verdict checkAssertion(const ResolvedAssertion& assertion,
                       const StateVector& state, int numQubits,
                       const Config& config = {});

} // namespace qaref
