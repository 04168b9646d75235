/**
 * @file benchmarks.cpp
 * @brief Parametric benchmark generation with simulated reference states.
 */

#include "qaref/benchmarks.hpp"

#include "qaref/parser.hpp"
#include "qaref/printer.hpp"
#include "qaref/program.hpp"
#include "qaref/simulator.hpp"

#include <sstream>

namespace qaref {

BenchmarkFamily benchmarkFamilyFromName(const std::string& name) {
  if (name == "ghz") {
    return BenchmarkFamily::Ghz;
  }
  if (name == "graph-state") {
    return BenchmarkFamily::GraphState;
  }
  if (name == "dj-like") {
    return BenchmarkFamily::DjLike;
  }
  if (name == "qft-like") {
    return BenchmarkFamily::QftLike;
  }
  throw AnalysisError("unknown benchmark family '" + name +
                      "' (expected ghz, graph-state, dj-like or qft-like)");
}

const char* benchmarkFamilyName(BenchmarkFamily family) {
  switch (family) {
  case BenchmarkFamily::Ghz:
    return "ghz";
  case BenchmarkFamily::GraphState:
    return "graph-state";
  case BenchmarkFamily::DjLike:
    return "dj-like";
  case BenchmarkFamily::QftLike:
    return "qft-like";
  }
  return "unknown";
}

namespace {

std::string circuitBody(BenchmarkFamily family, int n) {
  std::ostringstream out;
  out << "qreg q[" << n << "];\n";
  switch (family) {
  case BenchmarkFamily::Ghz:
    // Fig.-2 shape: q[2] hangs off q[1], the spine runs 0-1-3-4-...-(n-1),
    // then a local phase frame that rules 3/4 can move assertions across.
    out << "h q[0];\n";
    out << "cx q[0], q[1];\n";
    if (n >= 3) {
      out << "cx q[1], q[2];\n";
    }
    if (n >= 4) {
      out << "cx q[1], q[3];\n";
      for (int i = 4; i < n; ++i) {
        out << "cx q[" << (i - 1) << "], q[" << i << "];\n";
      }
    }
    out << "z q[0];\n";
    out << "z q[" << (n - 1) << "];\n";
    break;
  case BenchmarkFamily::GraphState:
    out << "h q;\n";
    for (int i = 0; i + 1 < n; ++i) {
      out << "cz q[" << i << "], q[" << (i + 1) << "];\n";
    }
    break;
  case BenchmarkFamily::DjLike:
    // Balanced oracle f(x) = x_0 xor ... xor x_(n-2); ancilla is q[n-1].
    out << "x q[" << (n - 1) << "];\n";
    out << "h q;\n";
    for (int i = 0; i + 1 < n; ++i) {
      out << "cx q[" << i << "], q[" << (n - 1) << "];\n";
    }
    for (int i = 0; i + 1 < n; ++i) {
      out << "h q[" << i << "];\n";
    }
    break;
  case BenchmarkFamily::QftLike:
    // h+t on every qubit, then a phase ladder walked from the bottom. The
    // last qubit keeps a single neighbor so its pair correlation survives
    // (degree-1 vertices are the only pairwise-correlated ones in a graph
    // state).
    for (int j = 0; j < n; ++j) {
      out << "h q[" << j << "];\n";
      out << "t q[" << j << "];\n";
    }
    for (int j = n - 2; j >= 0; --j) {
      out << "cz q[" << j << "], q[" << (j + 1) << "];\n";
      if (j + 2 <= n - 2) {
        out << "cz q[" << j << "], q[" << (j + 2) << "];\n";
      }
    }
    break;
  }
  return out.str();
}

std::pair<int, int> entanglementPair(BenchmarkFamily family, int n) {
  switch (family) {
  case BenchmarkFamily::Ghz:
    return {0, n - 1};
  case BenchmarkFamily::GraphState:
    return {0, 1};
  case BenchmarkFamily::QftLike:
    return {n - 2, n - 1};
  case BenchmarkFamily::DjLike:
    return {0, n - 1};  // refused below: the final state is a product
  }
  return {0, 1};
}

} // namespace

std::string generateBenchmark(BenchmarkFamily family, int qubits,
                              AssertionKind kind, const Config& config) {
  if (qubits < 2) {
    throw AnalysisError("benchmark families need at least 2 qubits");
  }
  std::string text = circuitBody(family, qubits);
  const FlatProgram flat = flatten(parse(text));
  const StateVector state = finalState(flat, config.seed, config);

  switch (kind) {
  case AssertionKind::Equality: {
    text += "assert-eq q { ";
    for (Eigen::Index i = 0; i < state.size(); ++i) {
      if (i > 0) {
        text += ", ";
      }
      text += formatComplex(state(i));
    }
    text += " }\n";
    break;
  }
  case AssertionKind::Entanglement: {
    const auto [a, b] = entanglementPair(family, qubits);
    const int pair[2] = {a, b};
    const Verdict check = checkEntanglement(state, pair, qubits, config);
    if (!check.pass) {
      throw AnalysisError(
          std::string("family '") + benchmarkFamilyName(family) +
          "' does not entangle q[" + std::to_string(a) + "] with q[" +
          std::to_string(b) + "]; entanglement assertions are not applicable");
    }
    text += "assert-ent q[" + std::to_string(a) + "], q[" +
            std::to_string(b) + "];\n";
    break;
  }
  case AssertionKind::Superposition: {
    const int target[1] = {0};
    const Verdict check = checkSuperposition(state, target, qubits, config);
    if (!check.pass) {
      throw AnalysisError(std::string("family '") +
                          benchmarkFamilyName(family) +
                          "' leaves q[0] in a basis state; superposition "
                          "assertions are not applicable");
    }
    text += "assert-sup q[0];\n";
    break;
  }
  }
  // The generated text must be a valid program in its own right.
  (void)flatten(parse(text));
  return text;
}

} // namespace qaref
