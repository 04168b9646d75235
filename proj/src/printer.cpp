/**
 * @file printer.cpp
 * @brief Statement and program printing.
 */

#include "qaref/printer.hpp"

#include <array>
#include <charconv>

namespace qaref {

namespace {

std::string formatQubitRef(const QubitRef& ref) {
  if (!ref.index.has_value()) {
    return ref.reg;
  }
  return ref.reg + "[" + std::to_string(*ref.index) + "]";
}

std::string formatRefList(const std::vector<QubitRef>& refs) {
  std::string out;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += formatQubitRef(refs[i]);
  }
  return out;
}

std::string formatStatement(const Statement& stmt, int indent);

std::string formatGateDef(const GateDef& def, int indent) {
  std::string out(static_cast<size_t>(indent), ' ');
  out += "gate " + def.name + " ";
  for (size_t i = 0; i < def.formals.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += def.formals[i];
  }
  out += " {\n";
  for (const auto& inner : def.body) {
    out += formatStatement(inner, indent + 2) + "\n";
  }
  out += std::string(static_cast<size_t>(indent), ' ') + "}";
  return out;
}

std::string formatStatement(const Statement& stmt, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  if (stmt.is<VersionHeader>()) {
    return pad + "OPENQASM " + stmt.as<VersionHeader>().version + ";";
  }
  if (stmt.is<Include>()) {
    return pad + "include \"" + stmt.as<Include>().path + "\";";
  }
  if (stmt.is<QRegDecl>()) {
    const auto& d = stmt.as<QRegDecl>();
    return pad + "qreg " + d.name + "[" + std::to_string(d.size) + "];";
  }
  if (stmt.is<CRegDecl>()) {
    const auto& d = stmt.as<CRegDecl>();
    return pad + "creg " + d.name + "[" + std::to_string(d.size) + "];";
  }
  if (stmt.is<GateDef>()) {
    return formatGateDef(stmt.as<GateDef>(), indent);
  }
  if (stmt.is<GateApply>()) {
    const auto& apply = stmt.as<GateApply>();
    std::string out = pad + apply.name;
    if (!apply.params.empty()) {
      out += "(";
      for (size_t i = 0; i < apply.params.size(); ++i) {
        if (i > 0) {
          out += ", ";
        }
        out += formatDouble(apply.params[i]);
      }
      out += ")";
    }
    return out + " " + formatRefList(apply.operands) + ";";
  }
  if (stmt.is<Measure>()) {
    const auto& m = stmt.as<Measure>();
    return pad + "measure " + formatQubitRef(m.src) + " -> " +
           formatQubitRef(QubitRef{m.dst.reg, m.dst.index}) + ";";
  }
  if (stmt.is<Reset>()) {
    return pad + "reset " + formatQubitRef(stmt.as<Reset>().target) + ";";
  }
  if (stmt.is<Barrier>()) {
    return pad + "barrier " + formatRefList(stmt.as<Barrier>().operands) + ";";
  }
  const auto& assertion = stmt.as<Assertion>();
  std::string out = pad;
  switch (assertion.kind) {
  case AssertionKind::Superposition:
    out += "assert-sup ";
    break;
  case AssertionKind::Entanglement:
    out += "assert-ent ";
    break;
  case AssertionKind::Equality:
    out += "assert-eq ";
    break;
  }
  out += formatRefList(assertion.targets);
  if (assertion.kind == AssertionKind::Equality) {
    out += " { ";
    for (size_t i = 0; i < assertion.amplitudes.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += formatComplex(assertion.amplitudes[i]);
    }
    out += " }";  // no terminator after an amplitude block
  } else {
    out += ";";
  }
  return out;
}

bool isSinkable(const Statement& stmt) {
  return stmt.is<VersionHeader>() || stmt.is<Include>() ||
         stmt.is<QRegDecl>() || stmt.is<CRegDecl>() || stmt.is<GateDef>();
}

std::string annotationFor(const Instruction& instr) {
  if (!instr.assertion.has_value()) {
    return "";
  }
  const auto& a = *instr.assertion;
  switch (a.origin) {
  case AssertionOrigin::Interaction:
    return " // added by interaction";
  case AssertionOrigin::Separation:
    return " // added by separation";
  case AssertionOrigin::Developer:
    if (a.movedFromLine > 0) {
      return " // moved from line " + std::to_string(a.movedFromLine);
    }
    return "";
  }
  return "";
}

/// Statement layout for a flat program: unbroken whole-register expansion
/// groups collapse to their original statement, and declarations are
/// re-sunk to the top whenever an assertion climbed above one (so the
/// output remains valid input).
std::vector<std::pair<Statement, const Instruction*>>
layoutStatements(const FlatProgram& program) {
  std::vector<std::pair<Statement, const Instruction*>> body;
  const auto& instrs = program.instructions;
  for (size_t i = 0; i < instrs.size();) {
    const Instruction& instr = instrs[i];
    if (instr.expandCount > 1 && instr.expandIndex == 0 &&
        instr.groupStmt.has_value()) {
      const auto count = static_cast<size_t>(instr.expandCount);
      bool unbroken = i + count <= instrs.size();
      for (size_t j = 0; unbroken && j < count; ++j) {
        unbroken = instrs[i + j].stmtOrdinal == instr.stmtOrdinal &&
                   instrs[i + j].expandIndex == static_cast<int>(j);
      }
      if (unbroken) {
        body.emplace_back(*instr.groupStmt, &instr);
        i += count;
        continue;
      }
    }
    body.emplace_back(instr.stmt, &instr);
    ++i;
  }
  bool needsHoist = false;
  bool seenAssertion = false;
  for (const auto& [stmt, instr] : body) {
    if (instr->kind == InstrKind::Assertion) {
      seenAssertion = true;
    } else if (seenAssertion && isSinkable(stmt)) {
      needsHoist = true;
      break;
    }
  }
  if (!needsHoist) {
    return body;
  }
  std::vector<std::pair<Statement, const Instruction*>> hoisted;
  hoisted.reserve(body.size());
  for (const auto& entry : body) {
    if (isSinkable(entry.first)) {
      hoisted.push_back(entry);
    }
  }
  for (const auto& entry : body) {
    if (!isSinkable(entry.first)) {
      hoisted.push_back(entry);
    }
  }
  return hoisted;
}

} // namespace

std::string formatDouble(double value) {
  std::array<char, 40> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return {buffer.data(), result.ptr};
}

std::string formatComplex(const std::complex<double>& value) {
  const double re = value.real();
  const double im = value.imag();
  if (im == 0.0) {
    return formatDouble(re);
  }
  if (re == 0.0) {
    return formatDouble(im) + "i";
  }
  if (im < 0.0) {
    return formatDouble(re) + "-" + formatDouble(-im) + "i";
  }
  return formatDouble(re) + "+" + formatDouble(im) + "i";
}

std::string print(const SourceProgram& program, PrintOptions /*options*/) {
  std::string out;
  for (const auto& stmt : program.statements) {
    out += formatStatement(stmt, 0) + "\n";
  }
  return out;
}

SourceProgram toSource(const FlatProgram& program) {
  SourceProgram out;
  for (const auto& [stmt, instr] : layoutStatements(program)) {
    out.statements.push_back(stmt);
  }
  for (size_t i = 0; i < out.statements.size(); ++i) {
    out.statements[i].line = static_cast<int>(i) + 1;
  }
  return out;
}

std::string print(const FlatProgram& program, PrintOptions options) {
  std::string out;
  for (const auto& [stmt, instr] : layoutStatements(program)) {
    out += formatStatement(stmt, 0);
    if (options.annotations) {
      out += annotationFor(*instr);
    }
    out += "\n";
  }
  return out;
}

} // namespace qaref
