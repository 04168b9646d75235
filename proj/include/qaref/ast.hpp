/**
 * @file ast.hpp
 * @brief Statement-level representation of the extended OpenQASM 2 dialect.
 */

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qaref {

/// A qubit reference: either a whole register (`q`) or an indexed qubit (`q[3]`).
struct QubitRef {
  std::string reg;
  std::optional<int> index;

  bool operator==(const QubitRef&) const = default;
};

/// A classical bit reference used by `measure`.
struct BitRef {
  std::string reg;
  std::optional<int> index;

  bool operator==(const BitRef&) const = default;
};

enum class AssertionKind { Superposition, Entanglement, Equality };

const char* assertionKindName(AssertionKind kind);

struct VersionHeader {
  std::string version;
  bool operator==(const VersionHeader&) const = default;
};

struct Include {
  std::string path;
  bool operator==(const Include&) const = default;
};

struct QRegDecl {
  std::string name;
  int size = 0;
  bool operator==(const QRegDecl&) const = default;
};

struct CRegDecl {
  std::string name;
  int size = 0;
  bool operator==(const CRegDecl&) const = default;
};

struct GateApply {
  std::string name;
  std::vector<double> params;
  std::vector<QubitRef> operands;
  bool operator==(const GateApply&) const = default;
};

struct Measure {
  QubitRef src;
  BitRef dst;
  bool operator==(const Measure&) const = default;
};

struct Reset {
  QubitRef target;
  bool operator==(const Reset&) const = default;
};

struct Barrier {
  std::vector<QubitRef> operands;
  bool operator==(const Barrier&) const = default;
};

/**
 * @brief One of the three assertion statements.
 *
 * Equality assertions carry 2^k complex amplitudes for k resolved target
 * qubits. The first listed target is the least significant bit of the
 * amplitude index (little-endian, matching the OpenQASM convention).
 */
struct Assertion {
  AssertionKind kind = AssertionKind::Superposition;
  std::vector<QubitRef> targets;
  std::vector<std::complex<double>> amplitudes;
  bool operator==(const Assertion&) const = default;
};

struct Statement;

/// Body of a user-defined gate. Operands refer to the gate's formal qubits.
struct GateDef {
  std::string name;
  std::vector<std::string> formals;
  std::vector<Statement> body;
  bool operator==(const GateDef&) const;
};

using StatementNode = std::variant<VersionHeader, Include, QRegDecl, CRegDecl,
                                   GateDef, GateApply, Measure, Reset, Barrier,
                                   Assertion>;

struct Statement {
  StatementNode node;
  int line = 0;  ///< 1-based source line

  bool operator==(const Statement& other) const { return node == other.node; }

  template <typename T> [[nodiscard]] bool is() const {
    return std::holds_alternative<T>(node);
  }
  template <typename T> [[nodiscard]] const T& as() const {
    return std::get<T>(node);
  }
  template <typename T> [[nodiscard]] T& as() { return std::get<T>(node); }
};

inline bool GateDef::operator==(const GateDef& other) const {
  return name == other.name && formals == other.formals && body == other.body;
}

/**
 * @brief A parsed program: ordered statements plus the line of each one.
 *
 * Structural equality ignores source lines, so `parse(print(p)) == p` holds
 * for any well-formed program even though printing renumbers lines.
 */
struct SourceProgram {
  std::vector<Statement> statements;

  /// instruction-index -> 1-based source line, in statement order.
  [[nodiscard]] std::vector<int> lineMap() const {
    std::vector<int> map;
    map.reserve(statements.size());
    for (const auto& s : statements) {
      map.push_back(s.line);
    }
    return map;
  }

  bool operator==(const SourceProgram& other) const {
    return statements == other.statements;
  }
};

/// Error raised by the frontend; carries the offending source position.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int line, int column = 0)
      : std::runtime_error(formatMessage(message, line, column)),
        line_(line), column_(column) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  static std::string formatMessage(const std::string& message, int line,
                                   int column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) {
      out += ", column " + std::to_string(column);
    }
    return out + ": " + message;
  }

  int line_;
  int column_;
};

/// Error raised by analyses and simulation (not by the parser).
class AnalysisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace qaref
