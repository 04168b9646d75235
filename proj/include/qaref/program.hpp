/**
 * @file program.hpp
 * @brief Instruction-indexed IR with resolved qubits and unitary classes.
 */

#pragma once

#include "qaref/ast.hpp"
#include "qaref/gates.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qaref {

enum class InstrKind { NonFunctional, Unitary, MeasurementLike, Assertion };

enum class UnitaryClass {
  NonFunctional,
  Diagonal,
  AntiDiagonal,
  GeneralUnitary,
  MeasurementLike,
};

const char* unitaryClassName(UnitaryClass cls);

/// How an assertion entered the program.
enum class AssertionOrigin { Developer, Interaction, Separation };

/// Assertion payload with targets resolved to global qubit indices.
struct ResolvedAssertion {
  AssertionKind kind = AssertionKind::Superposition;
  std::vector<int> targets;  ///< global indices, in listed order (bit order)
  StateVector amplitudes;    ///< Equality only
  AssertionOrigin origin = AssertionOrigin::Developer;
  int id = 0;             ///< unique per program, increases with creation
  int movedFromLine = 0;  ///< >0 once the mover relocated it
};

struct Instruction {
  InstrKind kind = InstrKind::NonFunctional;
  UnitaryClass unitaryClass = UnitaryClass::NonFunctional;
  std::vector<int> acted;  ///< sorted global qubit indices
  std::optional<DenseMatrix> matrix;  ///< synthesized when |acted| <= 3
  Statement stmt;                     ///< printable statement form
  std::vector<int> operandQubits;     ///< resolved operands, listed order
  int originLine = 0;
  int stmtOrdinal = 0;   ///< index of the source statement
  int expandIndex = 0;   ///< position within a whole-register expansion
  int expandCount = 1;   ///< size of that expansion group
  std::optional<Statement> groupStmt;  ///< original statement, on group head
  std::optional<ResolvedAssertion> assertion;

  [[nodiscard]] bool touches(int qubit) const;
  [[nodiscard]] bool touchesAny(std::span<const int> qubits) const;
};

struct GateInfo {
  std::vector<std::string> formals;
  std::vector<Statement> body;
  bool measurementLike = false;
  std::vector<int> touchedFormals;  ///< formal positions the body acts on
};

/**
 * @brief Flattened program: one Instruction per statement, with
 * whole-register single-qubit applications expanded per qubit.
 *
 * Custom gate applications stay single instructions; their bodies are
 * inlined only for acted-qubit computation, matrix synthesis and simulation.
 */
struct FlatProgram {
  std::vector<Instruction> instructions;
  int numQubits = 0;
  std::map<std::string, std::pair<int, int>> qregs;  ///< name -> offset,size
  std::map<std::string, int> cregs;                  ///< name -> size
  std::map<std::string, GateInfo> gates;
  int nextAssertionId = 0;

  [[nodiscard]] std::vector<size_t> assertionIndices() const;
  [[nodiscard]] QubitRef qubitName(int global) const;
};

/// Flatten a parsed program into the instruction IR. The tolerance feeds
/// the diagonal/anti-diagonal classification of synthesized operators.
FlatProgram flatten(const SourceProgram& program,
                    double classifyTolerance = 1e-9);

/**
 * @brief Classify a unitary instruction's operator matrix.
 *
 * Synthesizes the full operator over the instruction's acted qubits when
 * there are at most 3 of them. Diagonal/anti-diagonal are decided by an
 * off-(anti-)diagonal modulus below `tolerance`; a matrix satisfying both
 * tests is reported Diagonal. More than 3 acted qubits falls back to
 * GeneralUnitary with no matrix.
 */
UnitaryClass classifyUnitary(const Instruction& instr,
                             std::optional<DenseMatrix>& matrix,
                             const FlatProgram& program,
                             double tolerance = 1e-9);

/// Operator matrix over the instruction's sorted acted qubits (bit j =
/// acted[j]); nullopt when more than 3 qubits are acted on.
std::optional<DenseMatrix> synthesizeMatrix(const Instruction& instr,
                                            const FlatProgram& program);

} // namespace qaref
