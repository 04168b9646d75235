/**
 * @file simulator.cpp
 * @brief Statevector execution and the three verdict computations.
 */

#include "qaref/simulator.hpp"

#include "qaref/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <random>

namespace qaref {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// platform for a given seed, unlike uniform_real_distribution.
double nextUniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Executor {
public:
  Executor(const FlatProgram& program, std::uint64_t seed,
           const Config& config)
      : program_(program), config_(config), rng_(seed) {
    if (program.numQubits > config.qubitCap) {
      throw AnalysisError("program uses " +
                          std::to_string(program.numQubits) +
                          " qubits, exceeding the cap of " +
                          std::to_string(config.qubitCap));
    }
    state_ = StateVector::Zero(Eigen::Index{1} << program.numQubits);
    state_(0) = 1.0;
  }

  std::vector<Verdict> runAll() {
    std::vector<Verdict> verdicts;
    for (size_t i = 0; i < program_.instructions.size(); ++i) {
      const Instruction& instr = program_.instructions[i];
      switch (instr.kind) {
      case InstrKind::NonFunctional:
        break;
      case InstrKind::Assertion: {
        Verdict verdict =
            checkAssertion(*instr.assertion, state_, program_.numQubits,
                           config_);
        verdict.instructionIndex = i;
        verdict.line = instr.originLine;
        verdicts.push_back(verdict);
        break;
      }
      case InstrKind::Unitary:
      case InstrKind::MeasurementLike:
        execute(instr);
        break;
      }
    }
    return verdicts;
  }

  [[nodiscard]] const StateVector& state() const { return state_; }

private:
  void execute(const Instruction& instr) {
    if (instr.stmt.is<Measure>()) {
      collapse(instr.acted.front(), false);
      return;
    }
    if (instr.stmt.is<Reset>()) {
      collapse(instr.acted.front(), true);
      return;
    }
    const auto& apply = instr.stmt.as<GateApply>();
    if (gateArity(apply.name).has_value()) {
      applyGate(state_, gateMatrix(apply.name, apply.params),
                instr.operandQubits);
      return;
    }
    if (instr.matrix.has_value() && unitarityDefect(*instr.matrix) > 1e-9) {
      throw AnalysisError("non-unitary synthesized matrix for gate '" +
                          apply.name + "' (line " +
                          std::to_string(instr.originLine) + ")");
    }
    runBody(apply.name, instr.operandQubits);
  }

  void runBody(const std::string& gate, const std::vector<int>& actuals) {
    const GateInfo& info = program_.gates.at(gate);
    std::map<std::string, int> binding;
    for (size_t i = 0; i < info.formals.size(); ++i) {
      binding[info.formals[i]] = actuals[i];
    }
    for (const auto& stmt : info.body) {
      if (stmt.is<Barrier>()) {
        continue;
      }
      if (stmt.is<Reset>()) {
        collapse(binding.at(stmt.as<Reset>().target.reg), true);
        continue;
      }
      const auto& apply = stmt.as<GateApply>();
      std::vector<int> qubits;
      qubits.reserve(apply.operands.size());
      for (const auto& operand : apply.operands) {
        qubits.push_back(binding.at(operand.reg));
      }
      if (gateArity(apply.name).has_value()) {
        applyGate(state_, gateMatrix(apply.name, apply.params), qubits);
      } else {
        runBody(apply.name, qubits);
      }
    }
  }

  /// Sample the qubit, project, renormalize; reset forces |0> afterwards.
  void collapse(int qubit, bool reset) {
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    double pOne = 0.0;
    for (Eigen::Index idx = 0; idx < state_.size(); ++idx) {
      if ((idx & bit) != 0) {
        pOne += std::norm(state_(idx));
      }
    }
    const bool outcome = nextUniform(rng_) < pOne;
    const double norm = std::sqrt(outcome ? pOne : 1.0 - pOne);
    for (Eigen::Index idx = 0; idx < state_.size(); ++idx) {
      const bool isOne = (idx & bit) != 0;
      if (isOne != outcome) {
        state_(idx) = 0.0;
      } else {
        state_(idx) /= norm;
      }
    }
    if (reset && outcome) {
      // Map |1> back to |0> on the collapsed qubit.
      for (Eigen::Index idx = 0; idx < state_.size(); ++idx) {
        if ((idx & bit) != 0) {
          state_(idx & ~bit) = state_(idx);
          state_(idx) = 0.0;
        }
      }
    }
  }

  const FlatProgram& program_;
  const Config& config_;
  std::mt19937_64 rng_;
  StateVector state_;
};

} // namespace

Verdict checkSuperposition(const StateVector& state,
                           std::span<const int> targets, int numQubits,
                           const Config& config) {
  const DenseMatrix rho = partialTrace(state, targets, numQubits);
  int support = 0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    if (rho(i, i).real() > config.superpositionTol) {
      ++support;
    }
  }
  Verdict verdict;
  verdict.kind = AssertionKind::Superposition;
  verdict.supportCount = support;
  verdict.pass = support >= 2;
  return verdict;
}

Verdict checkEntanglement(const StateVector& state,
                          std::span<const int> targets, int numQubits,
                          const Config& config) {
  Verdict verdict;
  verdict.kind = AssertionKind::Entanglement;
  verdict.pass = true;
  double minDistance = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < targets.size(); ++i) {
    for (size_t j = i + 1; j < targets.size(); ++j) {
      const int pair[2] = {targets[i], targets[j]};
      const DenseMatrix rhoAB = partialTrace(state, pair, numQubits);
      bool pairEntangled = false;
      if (config.entanglementCriterion == EntanglementCriterion::Correlation) {
        const DenseMatrix rhoA =
            partialTrace(state, std::span<const int>{pair, 1}, numQubits);
        const DenseMatrix rhoB =
            partialTrace(state, std::span<const int>{pair + 1, 1}, numQubits);
        // Bit 0 of rhoAB is qubit a, so a is the fast Kronecker factor.
        const double distance = (rhoAB - kron(rhoB, rhoA)).norm();
        minDistance = std::min(minDistance, distance);
        pairEntangled = distance > config.entanglementTol;
      } else {
        const DenseMatrix pt = partialTransposeBit0(rhoAB);
        Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(pt);
        const double minEigen = solver.eigenvalues().minCoeff();
        minDistance = std::min(minDistance, -minEigen);
        pairEntangled = minEigen < -config.entanglementTol;
      }
      verdict.pass = verdict.pass && pairEntangled;
    }
  }
  verdict.correlationNorm =
      std::isfinite(minDistance) ? minDistance : 0.0;
  return verdict;
}

Verdict checkEquality(const StateVector& state, std::span<const int> targets,
                      const StateVector& amplitudes, int numQubits,
                      const Config& config) {
  const DenseMatrix rho = partialTrace(state, targets, numQubits);
  Verdict verdict;
  verdict.kind = AssertionKind::Equality;
  verdict.fidelity = stateFidelity(rho, amplitudes);
  verdict.pass = verdict.fidelity >= 1.0 - config.equalityFidelityTol;
  return verdict;
}

Verdict checkAssertion(const ResolvedAssertion& assertion,
                       const StateVector& state, int numQubits,
                       const Config& config) {
  Verdict verdict;
  switch (assertion.kind) {
  case AssertionKind::Superposition:
    verdict = checkSuperposition(state, assertion.targets, numQubits, config);
    break;
  case AssertionKind::Entanglement:
    verdict = checkEntanglement(state, assertion.targets, numQubits, config);
    break;
  case AssertionKind::Equality:
    verdict = checkEquality(state, assertion.targets, assertion.amplitudes,
                            numQubits, config);
    break;
  }
  verdict.assertionId = assertion.id;
  verdict.origin = assertion.origin;
  return verdict;
}

std::vector<Verdict> simulate(const FlatProgram& program, std::uint64_t seed,
                              const Config& config) {
  Executor executor(program, seed, config);
  return executor.runAll();
}

StateVector finalState(const FlatProgram& program, std::uint64_t seed,
                       const Config& config) {
  Executor executor(program, seed, config);
  executor.runAll();
  return executor.state();
}

} // namespace qaref
