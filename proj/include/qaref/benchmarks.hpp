/**
 * @file benchmarks.hpp
 * @brief Self-contained parametric benchmark families for the evaluation.
 */

#pragma once

#include "qaref/ast.hpp"
#include "qaref/config.hpp"

#include <string>

namespace qaref {

enum class BenchmarkFamily { Ghz, GraphState, DjLike, QftLike };

BenchmarkFamily benchmarkFamilyFromName(const std::string& name);
const char* benchmarkFamilyName(BenchmarkFamily family);

/**
 * @brief Generate a correct program with a trailing assertion.
 *
 * Families (q = the single quantum register):
 *  - ghz: Fig.-2-shaped GHZ preparation (branch at q[1], spine through the
 *    remaining qubits) followed by a local phase frame `z q[0]; z q[n-1];`.
 *    Entanglement assertion targets (q[0], q[n-1]).
 *  - graph-state: h on all qubits, cz along the path edges. Entanglement
 *    assertion targets the adjacent pair (q[0], q[1]).
 *  - dj-like: balanced-oracle Deutsch-Jozsa shape; the final state is a
 *    computational product with the ancilla in |->, so entanglement
 *    assertions are refused.
 *  - qft-like: per-qubit h + t followed by a cz phase ladder to the next
 *    two qubits (no final swaps; the last qubit keeps one neighbor).
 *    Entanglement assertion targets (q[n-2], q[n-1]).
 *
 * Equality assertions cover the whole register with amplitudes taken from
 * a classical simulation of the generated circuit.
 *
 * The requested assertion is checked against the simulated final state;
 * programs whose correct run would fail it are refused with a diagnostic
 * (AnalysisError).
 */
std::string generateBenchmark(BenchmarkFamily family, int qubits,
                              AssertionKind kind, const Config& config = {});

} // namespace qaref
