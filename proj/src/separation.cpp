/**
 * @file separation.cpp
 * @brief Greedy single-qubit factor extraction via rank-1 SVD tests.
 */

#include "qaref/separation.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>

namespace qaref {

namespace {

/// Apply the phase convention: first component of modulus > 1e-12 made real
/// and positive. Returns the phase that was divided out.
Complex normalizePhase(Eigen::Vector2cd& factor) {
  Complex pivot = factor(0);
  if (std::abs(pivot) <= 1e-12) {
    pivot = factor(1);
  }
  const Complex phase = pivot / std::abs(pivot);
  factor /= phase;
  return phase;
}

} // namespace

SeparationOutcome separate(const StateVector& amplitudes, double tolerance) {
  SeparationOutcome outcome;
  const auto totalQubits = static_cast<int>(std::countr_zero(
      static_cast<unsigned long long>(amplitudes.size())));
  outcome.residual = amplitudes;
  std::vector<int> remaining(static_cast<size_t>(totalQubits));
  for (int q = 0; q < totalQubits; ++q) {
    remaining[static_cast<size_t>(q)] = q;
  }

  for (int q = 0; q < totalQubits; ++q) {
    const auto it = std::find(remaining.begin(), remaining.end(), q);
    if (it == remaining.end()) {
      continue;
    }
    const auto bit = static_cast<int>(std::distance(remaining.begin(), it));
    const int k = static_cast<int>(remaining.size());
    const Eigen::Index restDim = Eigen::Index{1} << (k - 1);

    // Group amplitudes by the value of `bit`: rows = bit value.
    DenseMatrix grouped(2, restDim);
    for (Eigen::Index idx = 0; idx < outcome.residual.size(); ++idx) {
      const Eigen::Index b = (idx >> bit) & 1;
      const Eigen::Index low = idx & ((Eigen::Index{1} << bit) - 1);
      const Eigen::Index high = idx >> (bit + 1);
      grouped(b, low | (high << bit)) = outcome.residual(idx);
    }

    Eigen::JacobiSVD<DenseMatrix> svd(
        grouped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double second = sigma.size() > 1 ? sigma(1) : 0.0;
    if (second >= tolerance) {
      continue;
    }

    Eigen::Vector2cd factor = svd.matrixU().col(0);
    const Complex phase = normalizePhase(factor);
    outcome.separable.push_back(SeparableQubit{q, factor});
    // Push the factor's phase and weight into the residual so the tensor
    // product of all parts reconstructs the input exactly.
    outcome.residual = svd.matrixV().col(0).conjugate() * sigma(0) * phase;
    remaining.erase(remaining.begin() + bit);
  }
  outcome.residualPositions = remaining;
  return outcome;
}

std::vector<SeparableQubit> separableQubits(const StateVector& amplitudes,
                                            double tolerance) {
  return separate(amplitudes, tolerance).separable;
}

SeparationResult refineEquality(const FlatProgram& program,
                                const Config& config) {
  SeparationResult result;
  result.program = program;
  auto& instrs = result.program.instructions;

  // Walk bottom-up so insertions keep earlier indices stable.
  for (size_t rev = instrs.size(); rev-- > 0;) {
    if (instrs[rev].kind != InstrKind::Assertion) {
      continue;
    }
    const ResolvedAssertion assertion = *instrs[rev].assertion;
    if (assertion.kind != AssertionKind::Equality ||
        assertion.targets.size() < 2) {
      continue;
    }
    const SeparationOutcome outcome =
        separate(assertion.amplitudes, config.separabilityTol);
    if (outcome.separable.empty()) {
      continue;
    }
    SeparabilitySplit split;
    split.sourceAssertionId = assertion.id;
    split.sourceAssertionLine = instrs[rev].originLine;
    split.sourceIndex = rev;
    for (const int pos : outcome.residualPositions) {
      split.residualTargets.push_back(
          assertion.targets[static_cast<size_t>(pos)]);
    }

    size_t insertAt = rev;
    for (const SeparableQubit& qubit : outcome.separable) {
      const int global =
          assertion.targets[static_cast<size_t>(qubit.position)];
      split.separable.emplace_back(global, qubit.state);

      // Idempotence: skip if an identical single-qubit assertion already
      // exists at or above the original.
      bool duplicate = false;
      for (size_t j = 0; j <= rev && !duplicate; ++j) {
        const Instruction& other = instrs[j];
        if (other.kind == InstrKind::Assertion &&
            other.assertion->kind == AssertionKind::Equality &&
            other.assertion->targets == std::vector<int>{global} &&
            other.assertion->amplitudes.size() == 2 &&
            (other.assertion->amplitudes - qubit.state).norm() < 1e-12) {
          duplicate = true;
        }
      }
      if (duplicate) {
        continue;
      }

      Instruction instr;
      instr.kind = InstrKind::Assertion;
      ResolvedAssertion single;
      single.kind = AssertionKind::Equality;
      single.targets = {global};
      single.amplitudes = qubit.state;
      single.origin = AssertionOrigin::Separation;
      single.id = result.program.nextAssertionId++;
      instr.acted = {global};
      Assertion surface;
      surface.kind = AssertionKind::Equality;
      surface.targets = {result.program.qubitName(global)};
      surface.amplitudes = {qubit.state(0), qubit.state(1)};
      instr.stmt.node = surface;
      instr.stmt.line = 0;
      instr.originLine = 0;
      instr.stmtOrdinal = -1;
      instr.assertion = std::move(single);
      instrs.insert(instrs.begin() + static_cast<std::ptrdiff_t>(insertAt),
                    std::move(instr));
      ++insertAt;
    }

    if (config.dropSubsumed && outcome.residualPositions.empty()) {
      instrs.erase(instrs.begin() + static_cast<std::ptrdiff_t>(insertAt));
      split.droppedOriginal = true;
    }
    result.splits.push_back(std::move(split));
  }
  std::reverse(result.splits.begin(), result.splits.end());
  return result;
}

} // namespace qaref
