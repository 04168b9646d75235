/**
 * @file test_simulator.cpp
 * @brief Statevector checker tests: verdicts, partial-trace sanity, rule
 * soundness (small instances; the full metamorphic suites run in the
 * acceptance binary).
 */

#include "qaref/linalg.hpp"
#include "qaref/parser.hpp"
#include "qaref/simulator.hpp"
#include "support/oracles.hpp"
#include "support/random_programs.hpp"

#include <Eigen/Eigenvalues>
#include <fstream>
#include <gtest/gtest.h>
#include <sstream>

using namespace qaref;

namespace {

std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(QAREF_FIXTURE_DIR) + "/" + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Verdict> check(const std::string& text, std::uint64_t seed = 0) {
  return simulate(flatten(parse(text)), seed);
}

} // namespace

/// The faulty cccx fixture: all three assertions fail; anc ends in a state
/// with <00|rho|00> = 0.875 (hand-derived from the 1/8-weighted branches).
TEST(Simulator, FaultyCccxFailsAllThreeAssertions) {
  const auto verdicts = check(readFixture("cccx.qasm"));
  ASSERT_EQ(verdicts.size(), 3U);
  for (const Verdict& verdict : verdicts) {
    EXPECT_FALSE(verdict.pass);
  }
  EXPECT_EQ(verdicts[0].kind, AssertionKind::Equality);
  EXPECT_NEAR(verdicts[0].fidelity, 0.875, 1e-12);
  EXPECT_EQ(verdicts[0].line, 21);
  EXPECT_EQ(verdicts[1].line, 22);
  EXPECT_EQ(verdicts[2].line, 23);
}

TEST(Simulator, FixedCccxPassesAllThreeAssertions) {
  const auto verdicts = check(readFixture("cccx_fixed.qasm"));
  ASSERT_EQ(verdicts.size(), 3U);
  for (const Verdict& verdict : verdicts) {
    EXPECT_TRUE(verdict.pass) << "line " << verdict.line;
  }
}

TEST(Simulator, EmptyCircuitEqualityOnGroundState) {
  const auto verdicts = check("qreg q[1];\nassert-eq q[0] { 1, 0 }\n");
  ASSERT_EQ(verdicts.size(), 1U);
  EXPECT_TRUE(verdicts[0].pass);
  EXPECT_NEAR(verdicts[0].fidelity, 1.0, 1e-12);
}

TEST(Simulator, SuperpositionVerdicts) {
  EXPECT_TRUE(check("qreg q[1];\nh q[0];\nassert-sup q[0];\n")[0].pass);
  EXPECT_FALSE(check("qreg q[1];\nassert-sup q[0];\n")[0].pass);
  EXPECT_FALSE(check("qreg q[1];\nx q[0];\nassert-sup q[0];\n")[0].pass);
}

TEST(Simulator, EntanglementVerdicts) {
  // Bell pair entangled, |+>|+> an exact product.
  EXPECT_TRUE(
      check("qreg q[2];\nh q[0];\ncx q[0], q[1];\nassert-ent q[0], q[1];\n")[0]
          .pass);
  EXPECT_FALSE(
      check("qreg q[2];\nh q[0];\nh q[1];\nassert-ent q[0], q[1];\n")[0]
          .pass);
}

/// GHZ-5 marginal of (q0,q4): rho = (|00><00| + |11><11|)/2 against
/// rho_0 (x) rho_4 = I/4 gives Frobenius distance exactly 1/2, detected by
/// the correlation criterion although the pair state is PPT.
TEST(Simulator, GhzEndToEndPairCorrelation) {
  const std::string text = readFixture("ghz5_branch.qasm");
  const auto verdicts = check(text);
  ASSERT_EQ(verdicts.size(), 1U);
  EXPECT_TRUE(verdicts[0].pass);
  EXPECT_NEAR(verdicts[0].correlationNorm, 0.5, 1e-12);

  // Under the PPT criterion the same pair is not flagged.
  Config ppt;
  ppt.entanglementCriterion = EntanglementCriterion::Ppt;
  const auto pptVerdicts = simulate(flatten(parse(text)), 0, ppt);
  EXPECT_FALSE(pptVerdicts[0].pass);

  // The PPT criterion still detects a Bell pair.
  const auto bell = flatten(
      parse("qreg q[2];\nh q[0];\ncx q[0], q[1];\nassert-ent q[0], q[1];\n"));
  EXPECT_TRUE(simulate(bell, 0, ppt)[0].pass);
}

/// cx-entangled pair: the reduced state is diagonal (1/2, 0, 0, 1/2), so
/// equality against |00> reads fidelity 1/2 and fails.
TEST(Simulator, EqualityFailsOnEntangledMarginal) {
  const auto verdicts = check(
      "qreg q[2];\nh q[0];\ncx q[0], q[1];\nassert-eq q[0], q[1] { 1, 0, 0, "
      "0 }\n");
  EXPECT_FALSE(verdicts[0].pass);
  EXPECT_NEAR(verdicts[0].fidelity, 0.5, 1e-12);
}

/// A global phase never affects equality: u1 rotates |1> so x.u1.x leaves
/// e^{i phi}|00...> and the fidelity stays 1.
TEST(Simulator, EqualityIsGlobalPhaseInvariant) {
  const auto verdicts = check(
      "qreg q[2];\nx q[0];\nu1(1.0471975511965976) q[0];\nx q[0];\n"
      "assert-eq q[0], q[1] { 1, 0, 0, 0 }\n");
  EXPECT_TRUE(verdicts[0].pass);
  EXPECT_NEAR(verdicts[0].fidelity, 1.0, 1e-12);
}

TEST(Simulator, EqualityBitOrderingIsLittleEndian) {
  // First-listed target = least significant amplitude bit: after x q[0],
  // the state of (q0,q1) is |01> in that order, amplitude index 1.
  const auto verdicts = check(
      "qreg q[2];\nx q[0];\nassert-eq q[0], q[1] { 0, 1, 0, 0 }\n");
  EXPECT_TRUE(verdicts[0].pass);
  const auto flipped = check(
      "qreg q[2];\nx q[0];\nassert-eq q[1], q[0] { 0, 0, 1, 0 }\n");
  EXPECT_TRUE(flipped[0].pass);
}

TEST(Simulator, QubitCapEnforced) {
  Config config;
  config.qubitCap = 3;
  const FlatProgram flat = flatten(parse("qreg q[4];\nh q[0];\n"));
  EXPECT_THROW(simulate(flat, 0, config), AnalysisError);
}

TEST(Simulator, NormPreservedAndPartialTraceSane) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 40; ++i) {
    const auto flat =
        flatten(parse(qaref::testing::randomProgram(rng)));
    const StateVector state = finalState(flat, 0);
    EXPECT_NEAR(state.norm(), 1.0, 1e-9);

    std::vector<int> targets{0};
    if (flat.numQubits >= 2) {
      targets.push_back(1);
    }
    const DenseMatrix rho = partialTrace(state, targets, flat.numQubits);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
    EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho);
    EXPECT_GT(solver.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(Simulator, MeasurementCollapseIsSeedReproducible) {
  const std::string text =
      "qreg q[2];\ncreg c[2];\nh q[0];\ncx q[0], q[1];\n"
      "measure q[0] -> c[0];\nassert-eq q[1] { 1, 0 }\n";
  const FlatProgram flat = flatten(parse(text));
  for (const std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    const auto a = simulate(flat, seed);
    const auto b = simulate(flat, seed);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(a[0].pass, b[0].pass);
    EXPECT_DOUBLE_EQ(a[0].fidelity, b[0].fidelity);
  }
}

TEST(Simulator, ResetCollapsesToGround) {
  const auto verdicts =
      check("qreg q[1];\nh q[0];\nreset q[0];\nassert-eq q[0] { 1, 0 }\n", 5);
  EXPECT_TRUE(verdicts[0].pass);
}

TEST(Simulator, CustomGateInliningMatchesDirectCircuit) {
  const StateVector viaGate = finalState(flatten(parse(R"(
    qreg q[2];
    gate bellpair a, b { h a; cx a, b; }
    bellpair q[0], q[1];
  )")),
                                         0);
  const StateVector direct = finalState(
      flatten(parse("qreg q[2];\nh q[0];\ncx q[0], q[1];\n")), 0);
  EXPECT_LT((viaGate - direct).norm(), 1e-12);
}

// Rule-soundness spot checks; the >= 500-instance versions are acceptance
// criteria and live in test_acceptance.cpp.

TEST(RuleSoundness, DisjointGateLeavesReducedStateUnchanged) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i) {
    const StateVector state = qaref::testing::randomState(rng, 4);
    StateVector appended = state;
    const DenseMatrix h = gateMatrix("h", {});
    const int off[] = {3};
    applyGate(appended, h, off);
    const std::vector<int> targets{0, 1};
    const DenseMatrix before = partialTrace(state, targets, 4);
    const DenseMatrix after = partialTrace(appended, targets, 4);
    EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(RuleSoundness, DiagonalGatePreservesSuperpositionVerdict) {
  std::mt19937_64 rng(78);
  for (int i = 0; i < 50; ++i) {
    const StateVector state = qaref::testing::randomState(rng, 3);
    StateVector appended = state;
    const DenseMatrix gate =
        i % 2 == 0 ? gateMatrix("t", {}) : gateMatrix("x", {});
    const int target[] = {static_cast<int>(rng() % 3)};
    applyGate(appended, gate, target);
    const std::vector<int> observed{0, 1};
    const Verdict before = checkSuperposition(state, observed, 3);
    const Verdict after = checkSuperposition(appended, observed, 3);
    EXPECT_EQ(before.pass, after.pass);
  }
}

TEST(RuleSoundness, LocalUnitaryPreservesEntanglementVerdict) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 50; ++i) {
    const StateVector state = qaref::testing::randomState(rng, 3);
    StateVector appended = state;
    const DenseMatrix gate = gateMatrix(
        "u3", std::array<double, 3>{qaref::testing::uniform(rng) * 3,
                                    qaref::testing::uniform(rng) * 3,
                                    qaref::testing::uniform(rng) * 3});
    const int target[] = {static_cast<int>(rng() % 3)};
    applyGate(appended, gate, target);
    const std::vector<int> observed{0, 1};
    const Verdict before = checkEntanglement(state, observed, 3);
    const Verdict after = checkEntanglement(appended, observed, 3);
    EXPECT_EQ(before.pass, after.pass);
    EXPECT_NEAR(before.correlationNorm, after.correlationNorm, 1e-9);
  }
}
