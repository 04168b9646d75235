/**
 * @file program.cpp
 * @brief Flattening and unitary classification.
 */

#include "qaref/program.hpp"

#include "qaref/linalg.hpp"

#include <algorithm>
#include <set>

namespace qaref {

namespace {

/// Resolve an indexed qubit reference to its global index.
int resolveQubit(const FlatProgram& program, const QubitRef& ref) {
  const auto& [offset, size] = program.qregs.at(ref.reg);
  return offset + ref.index.value();
}

/// Expand a (possibly whole-register) reference into global indices.
std::vector<int> resolveRef(const FlatProgram& program, const QubitRef& ref) {
  const auto& [offset, size] = program.qregs.at(ref.reg);
  if (ref.index.has_value()) {
    return {offset + *ref.index};
  }
  std::vector<int> out(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    out[static_cast<size_t>(i)] = offset + i;
  }
  return out;
}

std::vector<int> sortedUnique(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

/// Formal positions a gate body acts on, following nested calls.
void collectGateInfo(GateInfo& info, const FlatProgram& program) {
  std::set<int> touched;
  std::map<std::string, int> formalPos;
  for (size_t i = 0; i < info.formals.size(); ++i) {
    formalPos[info.formals[i]] = static_cast<int>(i);
  }
  for (const auto& stmt : info.body) {
    if (stmt.is<Barrier>()) {
      continue;
    }
    if (stmt.is<Reset>()) {
      info.measurementLike = true;
      touched.insert(formalPos.at(stmt.as<Reset>().target.reg));
      continue;
    }
    const auto& apply = stmt.as<GateApply>();
    if (gateArity(apply.name).has_value()) {
      for (const auto& operand : apply.operands) {
        touched.insert(formalPos.at(operand.reg));
      }
    } else {
      const GateInfo& callee = program.gates.at(apply.name);
      info.measurementLike = info.measurementLike || callee.measurementLike;
      for (const int pos : callee.touchedFormals) {
        touched.insert(formalPos.at(apply.operands[pos].reg));
      }
    }
  }
  info.touchedFormals.assign(touched.begin(), touched.end());
}

Instruction makeInstruction(const Statement& stmt, int stmtOrdinal) {
  Instruction instr;
  instr.stmt = stmt;
  instr.originLine = stmt.line;
  instr.stmtOrdinal = stmtOrdinal;
  return instr;
}

/// Apply one body statement to a local operator-synthesis state.
void applyBodyForSynthesis(StateVector& state, const Statement& stmt,
                           const std::map<std::string, int>& formalToLocal,
                           const FlatProgram& program) {
  if (stmt.is<Barrier>()) {
    return;
  }
  const auto& apply = stmt.as<GateApply>();
  std::vector<int> locals;
  locals.reserve(apply.operands.size());
  for (const auto& operand : apply.operands) {
    locals.push_back(formalToLocal.at(operand.reg));
  }
  if (gateArity(apply.name).has_value()) {
    applyGate(state, gateMatrix(apply.name, apply.params), locals);
    return;
  }
  const GateInfo& callee = program.gates.at(apply.name);
  std::map<std::string, int> nested;
  for (size_t i = 0; i < callee.formals.size(); ++i) {
    nested[callee.formals[i]] = locals[i];
  }
  for (const auto& inner : callee.body) {
    applyBodyForSynthesis(state, inner, nested, program);
  }
}

} // namespace

const char* unitaryClassName(UnitaryClass cls) {
  switch (cls) {
  case UnitaryClass::NonFunctional:
    return "non-functional";
  case UnitaryClass::Diagonal:
    return "diagonal";
  case UnitaryClass::AntiDiagonal:
    return "anti-diagonal";
  case UnitaryClass::GeneralUnitary:
    return "general-unitary";
  case UnitaryClass::MeasurementLike:
    return "measurement-like";
  }
  return "unknown";
}

bool Instruction::touches(int qubit) const {
  return std::binary_search(acted.begin(), acted.end(), qubit);
}

bool Instruction::touchesAny(std::span<const int> qubits) const {
  return std::any_of(qubits.begin(), qubits.end(),
                     [this](int q) { return touches(q); });
}

std::vector<size_t> FlatProgram::assertionIndices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < instructions.size(); ++i) {
    if (instructions[i].kind == InstrKind::Assertion) {
      out.push_back(i);
    }
  }
  return out;
}

QubitRef FlatProgram::qubitName(int global) const {
  for (const auto& [name, range] : qregs) {
    if (global >= range.first && global < range.first + range.second) {
      return QubitRef{name, global - range.first};
    }
  }
  throw AnalysisError("qubit index out of range");
}

std::optional<DenseMatrix> synthesizeMatrix(const Instruction& instr,
                                            const FlatProgram& program) {
  if (instr.acted.size() > 3) {
    return std::nullopt;
  }
  const auto& apply = instr.stmt.as<GateApply>();
  const auto k = static_cast<Eigen::Index>(instr.acted.size());
  const Eigen::Index dim = Eigen::Index{1} << k;
  if (gateArity(apply.name).has_value() &&
      instr.operandQubits.size() == instr.acted.size()) {
    const DenseMatrix base = gateMatrix(apply.name, apply.params);
    // Permute operand order into sorted acted order by synthesizing columns.
    std::vector<int> operandLocal(instr.operandQubits.size());
    for (size_t i = 0; i < instr.operandQubits.size(); ++i) {
      const auto it = std::find(instr.acted.begin(), instr.acted.end(),
                                instr.operandQubits[i]);
      operandLocal[i] =
          static_cast<int>(std::distance(instr.acted.begin(), it));
    }
    DenseMatrix out = DenseMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      StateVector basis = StateVector::Zero(dim);
      basis(col) = 1.0;
      applyGate(basis, base, operandLocal);
      out.col(col) = basis;
    }
    return out;
  }
  // Custom gate: run the inlined body on each basis state.
  const GateInfo& info = program.gates.at(apply.name);
  std::map<std::string, int> formalToLocal;
  for (size_t i = 0; i < info.formals.size(); ++i) {
    const int global = instr.operandQubits[i];
    const auto it =
        std::find(instr.acted.begin(), instr.acted.end(), global);
    if (it != instr.acted.end()) {
      formalToLocal[info.formals[i]] =
          static_cast<int>(std::distance(instr.acted.begin(), it));
    }
  }
  // Formals the body never touches still need a binding for nested calls;
  // they cannot influence the acted-qubit operator, so alias them to bit 0.
  for (size_t i = 0; i < info.formals.size(); ++i) {
    formalToLocal.try_emplace(info.formals[i], 0);
  }
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector basis = StateVector::Zero(dim);
    basis(col) = 1.0;
    for (const auto& stmt : info.body) {
      applyBodyForSynthesis(basis, stmt, formalToLocal, program);
    }
    out.col(col) = basis;
  }
  return out;
}

UnitaryClass classifyUnitary(const Instruction& instr,
                             std::optional<DenseMatrix>& matrix,
                             const FlatProgram& program, double tolerance) {
  matrix = synthesizeMatrix(instr, program);
  if (!matrix.has_value()) {
    return UnitaryClass::GeneralUnitary;
  }
  const DenseMatrix& m = *matrix;
  const Eigen::Index dim = m.rows();
  double offDiagonal = 0.0;
  double offAntiDiagonal = 0.0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double mod = std::abs(m(r, c));
      if (r != c) {
        offDiagonal = std::max(offDiagonal, mod);
      }
      if (r != dim - 1 - c) {
        offAntiDiagonal = std::max(offAntiDiagonal, mod);
      }
    }
  }
  if (offDiagonal < tolerance) {
    return UnitaryClass::Diagonal;
  }
  if (offAntiDiagonal < tolerance) {
    return UnitaryClass::AntiDiagonal;
  }
  return UnitaryClass::GeneralUnitary;
}

FlatProgram flatten(const SourceProgram& source,
                    double classifyTolerance) {
  FlatProgram program;
  int stmtOrdinal = -1;
  for (const auto& stmt : source.statements) {
    ++stmtOrdinal;
    if (stmt.is<QRegDecl>()) {
      const auto& decl = stmt.as<QRegDecl>();
      program.qregs[decl.name] = {program.numQubits, decl.size};
      program.numQubits += decl.size;
      program.instructions.push_back(makeInstruction(stmt, stmtOrdinal));
      continue;
    }
    if (stmt.is<CRegDecl>()) {
      program.cregs[stmt.as<CRegDecl>().name] = stmt.as<CRegDecl>().size;
      program.instructions.push_back(makeInstruction(stmt, stmtOrdinal));
      continue;
    }
    if (stmt.is<VersionHeader>() || stmt.is<Include>()) {
      program.instructions.push_back(makeInstruction(stmt, stmtOrdinal));
      continue;
    }
    if (stmt.is<GateDef>()) {
      const auto& def = stmt.as<GateDef>();
      GateInfo info;
      info.formals = def.formals;
      info.body = def.body;
      collectGateInfo(info, program);
      program.gates[def.name] = info;
      program.instructions.push_back(makeInstruction(stmt, stmtOrdinal));
      continue;
    }
    if (stmt.is<Barrier>()) {
      Instruction instr = makeInstruction(stmt, stmtOrdinal);
      std::vector<int> acted;
      for (const auto& ref : stmt.as<Barrier>().operands) {
        const auto qubits = resolveRef(program, ref);
        acted.insert(acted.end(), qubits.begin(), qubits.end());
      }
      instr.acted = sortedUnique(std::move(acted));
      program.instructions.push_back(std::move(instr));
      continue;
    }
    if (stmt.is<Measure>() || stmt.is<Reset>()) {
      // Whole-register forms expand to one instruction per qubit.
      const QubitRef src = stmt.is<Measure>() ? stmt.as<Measure>().src
                                              : stmt.as<Reset>().target;
      const auto qubits = resolveRef(program, src);
      const int count = static_cast<int>(qubits.size());
      for (int i = 0; i < count; ++i) {
        Instruction instr = makeInstruction(stmt, stmtOrdinal);
        instr.kind = InstrKind::MeasurementLike;
        instr.unitaryClass = UnitaryClass::MeasurementLike;
        instr.acted = {qubits[static_cast<size_t>(i)]};
        instr.operandQubits = instr.acted;
        instr.expandIndex = i;
        instr.expandCount = count;
        if (count > 1) {
          if (i == 0) {
            instr.groupStmt = stmt;
          }
          // Rewrite the statement to the indexed per-qubit form.
          if (stmt.is<Measure>()) {
            auto single = stmt.as<Measure>();
            single.src.index = i;
            single.dst.index = i;
            instr.stmt.node = single;
          } else {
            auto single = stmt.as<Reset>();
            single.target.index = i;
            instr.stmt.node = single;
          }
        }
        program.instructions.push_back(std::move(instr));
      }
      continue;
    }
    if (stmt.is<Assertion>()) {
      const auto& assertion = stmt.as<Assertion>();
      Instruction instr = makeInstruction(stmt, stmtOrdinal);
      instr.kind = InstrKind::Assertion;
      ResolvedAssertion resolved;
      resolved.kind = assertion.kind;
      for (const auto& ref : assertion.targets) {
        const auto qubits = resolveRef(program, ref);
        resolved.targets.insert(resolved.targets.end(), qubits.begin(),
                                qubits.end());
      }
      if (assertion.kind == AssertionKind::Equality) {
        resolved.amplitudes.resize(
            static_cast<Eigen::Index>(assertion.amplitudes.size()));
        for (size_t i = 0; i < assertion.amplitudes.size(); ++i) {
          resolved.amplitudes(static_cast<Eigen::Index>(i)) =
              assertion.amplitudes[i];
        }
      }
      resolved.id = program.nextAssertionId++;
      instr.assertion = std::move(resolved);
      instr.acted = sortedUnique(instr.assertion->targets);
      program.instructions.push_back(std::move(instr));
      continue;
    }
    // Gate application.
    const auto& apply = stmt.as<GateApply>();
    const auto arity = gateArity(apply.name);
    const bool broadcast = arity.has_value() && arity->qubits == 1 &&
                           !apply.operands.front().index.has_value();
    if (broadcast) {
      const auto qubits = resolveRef(program, apply.operands.front());
      const int count = static_cast<int>(qubits.size());
      for (int i = 0; i < count; ++i) {
        Instruction instr = makeInstruction(stmt, stmtOrdinal);
        instr.kind = InstrKind::Unitary;
        instr.acted = {qubits[static_cast<size_t>(i)]};
        instr.operandQubits = instr.acted;
        instr.expandIndex = i;
        instr.expandCount = count;
        if (count > 1) {
          if (i == 0) {
            instr.groupStmt = stmt;
          }
          auto single = apply;
          single.operands.front().index = i;
          instr.stmt.node = single;
        }
        instr.unitaryClass = classifyUnitary(instr, instr.matrix, program,
                                             classifyTolerance);
        program.instructions.push_back(std::move(instr));
      }
      continue;
    }
    Instruction instr = makeInstruction(stmt, stmtOrdinal);
    for (const auto& operand : apply.operands) {
      instr.operandQubits.push_back(
          operand.index.has_value()
              ? resolveQubit(program, operand)
              : program.qregs.at(operand.reg).first);  // size-1 register
    }
    if (arity.has_value()) {
      instr.kind = InstrKind::Unitary;
      instr.acted = sortedUnique(instr.operandQubits);
    } else {
      const GateInfo& info = program.gates.at(apply.name);
      std::vector<int> acted;
      for (const int pos : info.touchedFormals) {
        acted.push_back(instr.operandQubits[static_cast<size_t>(pos)]);
      }
      instr.acted = sortedUnique(std::move(acted));
      if (info.measurementLike) {
        instr.kind = InstrKind::MeasurementLike;
        instr.unitaryClass = UnitaryClass::MeasurementLike;
        program.instructions.push_back(std::move(instr));
        continue;
      }
      instr.kind = InstrKind::Unitary;
    }
    instr.unitaryClass = classifyUnitary(instr, instr.matrix, program,
                                         classifyTolerance);
    program.instructions.push_back(std::move(instr));
  }
  return program;
}

} // namespace qaref
