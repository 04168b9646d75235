/**
 * @file parser.cpp
 * @brief Lexer and recursive-descent parser for the extended dialect.
 */

#include "qaref/parser.hpp"

#include "qaref/gates.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qaref {
namespace {

enum class TokKind {
  Identifier,  // also fused assert-eq / assert-sup / assert-ent
  Number,
  String,
  Symbol,  // one of ; , [ ] { } ( ) + - * / and the two-char ->
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double value = 0.0;
  int line = 0;
  int column = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skipWhitespaceAndComments();
      if (pos_ >= text_.size()) {
        break;
      }
      tokens.push_back(next());
    }
    tokens.push_back(Token{TokKind::End, "", 0.0, line_, column_});
    return tokens;
  }

private:
  void skipWhitespaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token next() {
    const int line = line_;
    const int col = column_;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::string ident = readIdentifier();
      // Assertion keywords carry a dash: fuse "assert" "-" "eq|sup|ent".
      if (ident == "assert" && pos_ < text_.size() && text_[pos_] == '-') {
        advance();
        const std::string suffix = readIdentifier();
        if (suffix != "eq" && suffix != "sup" && suffix != "ent") {
          throw ParseError("unknown assertion kind 'assert-" + suffix + "'",
                           line, col);
        }
        ident += "-" + suffix;
      }
      return Token{TokKind::Identifier, ident, 0.0, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
      return readNumber(line, col);
    }
    if (c == '"') {
      advance();
      std::string str;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        str += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) {
        throw ParseError("unterminated string literal", line, col);
      }
      advance();
      return Token{TokKind::String, str, 0.0, line, col};
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      return Token{TokKind::Symbol, "->", 0.0, line, col};
    }
    const std::string singles = ";,[]{}()+-*/";
    if (singles.find(c) != std::string::npos) {
      advance();
      return Token{TokKind::Symbol, std::string(1, c), 0.0, line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line,
                     col);
  }

  std::string readIdentifier() {
    std::string ident;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 ||
            text_[pos_] == '_')) {
      ident += text_[pos_];
      advance();
    }
    return ident;
  }

  Token readNumber(int line, int col) {
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      advance();
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        advance();
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t save = pos_;
      int saveLine = line_;
      int saveCol = column_;
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        advance();
      }
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
          advance();
        }
      } else {
        pos_ = save;
        line_ = saveLine;
        column_ = saveCol;
      }
    }
    const std::string lexeme = text_.substr(start, pos_ - start);
    if (lexeme == ".") {
      throw ParseError("malformed number", line, col);
    }
    return Token{TokKind::Number, lexeme, std::strtod(lexeme.c_str(), nullptr),
                 line, col};
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

/// Declared registers and gates, tracked while parsing for validation.
struct Scope {
  std::map<std::string, int> qregs;
  std::map<std::string, int> cregs;
  std::map<std::string, GateDef> gates;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SourceProgram run() {
    SourceProgram program;
    while (!at(TokKind::End)) {
      program.statements.push_back(statement());
    }
    return program;
  }

private:
  [[nodiscard]] const Token& peek(size_t ahead = 0) const {
    const size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  [[nodiscard]] bool at(TokKind kind) const { return peek().kind == kind; }
  [[nodiscard]] bool atSymbol(const std::string& s) const {
    return peek().kind == TokKind::Symbol && peek().text == s;
  }
  [[nodiscard]] bool atIdent(const std::string& s) const {
    return peek().kind == TokKind::Identifier && peek().text == s;
  }
  Token take() { return tokens_[pos_++]; }
  Token expectSymbol(const std::string& s) {
    if (!atSymbol(s)) {
      throw ParseError("expected '" + s + "' but found '" + peek().text + "'",
                       peek().line, peek().column);
    }
    return take();
  }
  Token expectIdent() {
    if (!at(TokKind::Identifier)) {
      throw ParseError("expected identifier but found '" + peek().text + "'",
                       peek().line, peek().column);
    }
    return take();
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  Statement statement() {
    const Token& tok = peek();
    if (tok.kind != TokKind::Identifier) {
      fail("expected a statement");
    }
    const int line = tok.line;
    Statement stmt;
    stmt.line = line;
    if (tok.text == "OPENQASM") {
      take();
      const Token version = take();
      if (version.kind != TokKind::Number) {
        fail("expected version number after OPENQASM");
      }
      expectSymbol(";");
      stmt.node = VersionHeader{version.text};
    } else if (tok.text == "include") {
      take();
      if (!at(TokKind::String)) {
        fail("expected string after include");
      }
      const std::string path = take().text;
      expectSymbol(";");
      stmt.node = Include{path};
    } else if (tok.text == "qreg" || tok.text == "creg") {
      const bool quantum = tok.text == "qreg";
      take();
      const Token name = expectIdent();
      expectSymbol("[");
      const Token size = take();
      if (size.kind != TokKind::Number ||
          size.text.find_first_of(".eE") != std::string::npos) {
        fail("register size must be a positive integer");
      }
      expectSymbol("]");
      expectSymbol(";");
      const int n = static_cast<int>(size.value);
      if (n <= 0) {
        throw ParseError("register size must be positive", name.line);
      }
      if (scope_.qregs.count(name.text) != 0U ||
          scope_.cregs.count(name.text) != 0U) {
        throw ParseError("register '" + name.text + "' already declared",
                         name.line);
      }
      if (quantum) {
        scope_.qregs[name.text] = n;
        stmt.node = QRegDecl{name.text, n};
      } else {
        scope_.cregs[name.text] = n;
        stmt.node = CRegDecl{name.text, n};
      }
    } else if (tok.text == "gate") {
      stmt.node = gateDef();
    } else if (tok.text == "measure") {
      take();
      const QubitRef src = qubitRef();
      expectSymbol("->");
      const BitRef dst = bitRef();
      expectSymbol(";");
      validateQubitRef(src, line);
      validateBitRef(dst, line);
      validateMeasureShape(src, dst, line);
      stmt.node = Measure{src, dst};
    } else if (tok.text == "reset") {
      take();
      const QubitRef target = qubitRef();
      expectSymbol(";");
      validateQubitRef(target, line);
      stmt.node = Reset{target};
    } else if (tok.text == "barrier") {
      take();
      std::vector<QubitRef> operands = qubitRefList();
      expectSymbol(";");
      for (const auto& ref : operands) {
        validateQubitRef(ref, line);
      }
      stmt.node = Barrier{std::move(operands)};
    } else if (tok.text == "assert-eq" || tok.text == "assert-sup" ||
               tok.text == "assert-ent") {
      stmt.node = assertion();
    } else if (tok.text == "if") {
      fail("'if' statements are not supported by this dialect");
    } else {
      stmt.node = gateApply();
    }
    return stmt;
  }

  GateDef gateDef() {
    take();  // gate
    const Token name = expectIdent();
    if (gateArity(name.text).has_value()) {
      throw ParseError("cannot redefine builtin gate '" + name.text + "'",
                       name.line);
    }
    if (scope_.gates.count(name.text) != 0U) {
      throw ParseError("gate '" + name.text + "' already defined", name.line);
    }
    if (atSymbol("(")) {
      fail("parameterized gate definitions are not supported");
    }
    GateDef def;
    def.name = name.text;
    std::set<std::string> formals;
    def.formals.push_back(expectIdent().text);
    formals.insert(def.formals.back());
    while (atSymbol(",")) {
      take();
      const Token formal = expectIdent();
      if (!formals.insert(formal.text).second) {
        throw ParseError("duplicate formal '" + formal.text + "'",
                         formal.line);
      }
      def.formals.push_back(formal.text);
    }
    expectSymbol("{");
    while (!atSymbol("}")) {
      if (at(TokKind::End)) {
        fail("unterminated gate body");
      }
      def.body.push_back(bodyStatement(def, formals));
    }
    take();  // }
    if (atSymbol(";")) {
      take();
    }
    scope_.gates[def.name] = def;
    return def;
  }

  Statement bodyStatement(const GateDef& def,
                          const std::set<std::string>& formals) {
    const Token& tok = peek();
    if (tok.kind != TokKind::Identifier) {
      fail("expected a statement inside gate body");
    }
    Statement stmt;
    stmt.line = tok.line;
    if (tok.text == "barrier") {
      take();
      std::vector<QubitRef> operands = formalRefList(formals);
      expectSymbol(";");
      stmt.node = Barrier{std::move(operands)};
      return stmt;
    }
    if (tok.text == "reset") {
      take();
      QubitRef target = formalRef(formals);
      expectSymbol(";");
      stmt.node = Reset{std::move(target)};
      return stmt;
    }
    if (tok.text == "measure") {
      fail("measure is not allowed inside gate bodies (no classical formals); "
           "use reset for collapse semantics");
    }
    if (tok.text.rfind("assert-", 0) == 0) {
      fail("assertions are only allowed at the top level");
    }
    // Gate application on formals.
    const Token name = take();
    GateApply apply;
    apply.name = name.text;
    if (atSymbol("(")) {
      take();
      apply.params.push_back(paramExpr());
      while (atSymbol(",")) {
        take();
        apply.params.push_back(paramExpr());
      }
      expectSymbol(")");
    }
    apply.operands = formalRefList(formals);
    expectSymbol(";");
    const auto arity = gateArity(apply.name);
    int expectedOperands = 0;
    int expectedParams = 0;
    if (arity.has_value()) {
      expectedOperands = arity->qubits;
      expectedParams = arity->params;
    } else if (scope_.gates.count(apply.name) != 0U) {
      expectedOperands =
          static_cast<int>(scope_.gates.at(apply.name).formals.size());
    } else {
      throw ParseError("gate '" + apply.name +
                           "' is not defined at this point (recursive or "
                           "forward definitions are rejected)",
                       name.line);
    }
    if (static_cast<int>(apply.operands.size()) != expectedOperands) {
      throw ParseError("gate '" + apply.name + "' expects " +
                           std::to_string(expectedOperands) + " operand(s)",
                       name.line);
    }
    if (static_cast<int>(apply.params.size()) != expectedParams) {
      throw ParseError("gate '" + apply.name + "' expects " +
                           std::to_string(expectedParams) + " parameter(s)",
                       name.line);
    }
    std::set<std::string> seen;
    for (const auto& ref : apply.operands) {
      if (!seen.insert(ref.reg).second) {
        throw ParseError("duplicate qubit '" + ref.reg + "' in gate call",
                         name.line);
      }
    }
    (void)def;
    stmt.node = std::move(apply);
    return stmt;
  }

  std::vector<QubitRef> formalRefList(const std::set<std::string>& formals) {
    std::vector<QubitRef> refs;
    refs.push_back(formalRef(formals));
    while (atSymbol(",")) {
      take();
      refs.push_back(formalRef(formals));
    }
    return refs;
  }

  QubitRef formalRef(const std::set<std::string>& formals) {
    const Token name = expectIdent();
    if (formals.count(name.text) == 0U) {
      throw ParseError("'" + name.text + "' is not a formal of this gate",
                       name.line);
    }
    if (atSymbol("[")) {
      throw ParseError("formal qubits cannot be indexed", name.line);
    }
    return QubitRef{name.text, std::nullopt};
  }

  GateApply gateApply() {
    const Token name = expectIdent();
    GateApply apply;
    apply.name = name.text;
    if (atSymbol("(")) {
      take();
      apply.params.push_back(paramExpr());
      while (atSymbol(",")) {
        take();
        apply.params.push_back(paramExpr());
      }
      expectSymbol(")");
    }
    apply.operands = qubitRefList();
    expectSymbol(";");

    const auto arity = gateArity(apply.name);
    int expectedOperands = 0;
    int expectedParams = 0;
    if (arity.has_value()) {
      expectedOperands = arity->qubits;
      expectedParams = arity->params;
    } else if (scope_.gates.count(apply.name) != 0U) {
      expectedOperands =
          static_cast<int>(scope_.gates.at(apply.name).formals.size());
    } else {
      throw ParseError("unknown gate '" + apply.name + "'", name.line);
    }
    if (static_cast<int>(apply.params.size()) != expectedParams) {
      throw ParseError("gate '" + apply.name + "' expects " +
                           std::to_string(expectedParams) + " parameter(s)",
                       name.line);
    }
    for (const auto& ref : apply.operands) {
      validateQubitRef(ref, name.line);
    }
    const bool broadcast =
        apply.operands.size() == 1 && !apply.operands.front().index.has_value();
    if (static_cast<int>(apply.operands.size()) != expectedOperands &&
        !(expectedOperands == 1 && broadcast)) {
      throw ParseError("gate '" + apply.name + "' expects " +
                           std::to_string(expectedOperands) + " operand(s)",
                       name.line);
    }
    if (expectedOperands > 1) {
      for (const auto& ref : apply.operands) {
        if (!ref.index.has_value()) {
          throw ParseError("whole-register operands are only supported on "
                           "single-qubit gates, measure and reset",
                           name.line);
        }
      }
      std::set<std::pair<std::string, int>> seen;
      for (const auto& ref : apply.operands) {
        if (!seen.insert({ref.reg, *ref.index}).second) {
          throw ParseError("duplicate qubit in gate operands", name.line);
        }
      }
    }
    if (!arity.has_value()) {
      // Custom gate applications: reject broadcast for clarity.
      for (const auto& ref : apply.operands) {
        if (!ref.index.has_value() && expectedOperands > 0 &&
            scope_.qregs.at(ref.reg) != 1) {
          throw ParseError(
              "custom gates cannot be broadcast over whole registers",
              name.line);
        }
      }
    }
    return apply;
  }

  Assertion assertion() {
    const Token name = take();
    Assertion assertion;
    if (name.text == "assert-eq") {
      assertion.kind = AssertionKind::Equality;
    } else if (name.text == "assert-sup") {
      assertion.kind = AssertionKind::Superposition;
    } else {
      assertion.kind = AssertionKind::Entanglement;
    }
    assertion.targets = qubitRefList();
    for (const auto& ref : assertion.targets) {
      validateQubitRef(ref, name.line);
    }
    // Resolve to per-qubit granularity for the arity and duplicate checks.
    std::vector<std::pair<std::string, int>> resolved;
    std::set<std::pair<std::string, int>> seen;
    for (const auto& ref : assertion.targets) {
      if (ref.index.has_value()) {
        resolved.emplace_back(ref.reg, *ref.index);
      } else {
        for (int i = 0; i < scope_.qregs.at(ref.reg); ++i) {
          resolved.emplace_back(ref.reg, i);
        }
      }
    }
    for (const auto& qubit : resolved) {
      if (!seen.insert(qubit).second) {
        throw ParseError("duplicate qubit '" + qubit.first + "[" +
                             std::to_string(qubit.second) +
                             "]' in assertion targets",
                         name.line);
      }
    }
    if (assertion.kind == AssertionKind::Equality) {
      expectSymbol("{");
      assertion.amplitudes.push_back(complexLiteral());
      while (atSymbol(",")) {
        take();
        assertion.amplitudes.push_back(complexLiteral());
      }
      expectSymbol("}");
      // The terminating ; is optional right after an amplitude block.
      if (atSymbol(";")) {
        take();
      }
      const size_t expected = size_t{1} << resolved.size();
      if (assertion.amplitudes.size() != expected) {
        throw ParseError("equality assertion over " +
                             std::to_string(resolved.size()) +
                             " qubit(s) requires " + std::to_string(expected) +
                             " amplitudes, got " +
                             std::to_string(assertion.amplitudes.size()),
                         name.line);
      }
      double norm = 0.0;
      for (const auto& amp : assertion.amplitudes) {
        norm += std::norm(amp);
      }
      if (std::abs(norm - 1.0) > 1e-6) {
        throw ParseError("amplitude vector norm deviates from 1 by more than "
                         "1e-6",
                         name.line);
      }
    } else {
      expectSymbol(";");
      if (assertion.kind == AssertionKind::Entanglement &&
          resolved.size() < 2) {
        throw ParseError("entanglement assertions require at least 2 target "
                         "qubits",
                         name.line);
      }
    }
    return assertion;
  }

  /// Complex literal: `a`, `bi`, `a+bi` or `a-bi`; components are plain
  /// decimal reals (no expressions inside amplitude blocks).
  std::complex<double> complexLiteral() {
    double real = 0.0;
    double first = signedReal();
    if (atIdent("i")) {
      take();
      return {0.0, first};
    }
    real = first;
    if (atSymbol("+") || atSymbol("-")) {
      const bool negative = take().text == "-";
      const Token num = take();
      if (num.kind != TokKind::Number) {
        fail("expected imaginary component");
      }
      if (!atIdent("i")) {
        fail("expected 'i' after imaginary component");
      }
      take();
      const double imag = negative ? -num.value : num.value;
      return {real, imag};
    }
    return {real, 0.0};
  }

  double signedReal() {
    bool negative = false;
    while (atSymbol("-") || atSymbol("+")) {
      if (take().text == "-") {
        negative = !negative;
      }
    }
    const Token num = take();
    if (num.kind != TokKind::Number) {
      throw ParseError("expected number but found '" + num.text + "'",
                       num.line, num.column);
    }
    return negative ? -num.value : num.value;
  }

  /// Gate parameter expression: products/quotients of reals and `pi`,
  /// with unary minus. E.g. `pi/4`, `-pi/2`, `3*pi/4`, `0.25`.
  double paramExpr() {
    double value = paramTerm();
    while (atSymbol("*") || atSymbol("/")) {
      const bool mul = take().text == "*";
      const double rhs = paramTerm();
      value = mul ? value * rhs : value / rhs;
    }
    return value;
  }

  double paramTerm() {
    if (atSymbol("-")) {
      take();
      return -paramTerm();
    }
    if (atIdent("pi")) {
      take();
      return std::numbers::pi;
    }
    const Token num = take();
    if (num.kind != TokKind::Number) {
      throw ParseError("expected number or pi in gate parameter", num.line,
                       num.column);
    }
    return num.value;
  }

  std::vector<QubitRef> qubitRefList() {
    std::vector<QubitRef> refs;
    refs.push_back(qubitRef());
    while (atSymbol(",")) {
      take();
      refs.push_back(qubitRef());
    }
    return refs;
  }

  QubitRef qubitRef() {
    const Token name = expectIdent();
    QubitRef ref{name.text, std::nullopt};
    if (atSymbol("[")) {
      take();
      const Token index = take();
      if (index.kind != TokKind::Number ||
          index.text.find_first_of(".eE") != std::string::npos) {
        fail("qubit index must be a non-negative integer");
      }
      expectSymbol("]");
      ref.index = static_cast<int>(index.value);
    }
    return ref;
  }

  BitRef bitRef() {
    const QubitRef ref = qubitRef();
    return BitRef{ref.reg, ref.index};
  }

  void validateQubitRef(const QubitRef& ref, int line) const {
    const auto it = scope_.qregs.find(ref.reg);
    if (it == scope_.qregs.end()) {
      throw ParseError("undeclared quantum register '" + ref.reg + "'", line);
    }
    if (ref.index.has_value() && (*ref.index < 0 || *ref.index >= it->second)) {
      throw ParseError("index " + std::to_string(*ref.index) +
                           " out of range for register '" + ref.reg + "[" +
                           std::to_string(it->second) + "]'",
                       line);
    }
  }

  void validateBitRef(const BitRef& ref, int line) const {
    const auto it = scope_.cregs.find(ref.reg);
    if (it == scope_.cregs.end()) {
      throw ParseError("undeclared classical register '" + ref.reg + "'",
                       line);
    }
    if (ref.index.has_value() && (*ref.index < 0 || *ref.index >= it->second)) {
      throw ParseError("index " + std::to_string(*ref.index) +
                           " out of range for register '" + ref.reg + "[" +
                           std::to_string(it->second) + "]'",
                       line);
    }
  }

  void validateMeasureShape(const QubitRef& src, const BitRef& dst,
                            int line) const {
    const bool srcWhole = !src.index.has_value();
    const bool dstWhole = !dst.index.has_value();
    if (srcWhole != dstWhole) {
      throw ParseError("measure requires both sides indexed or both whole "
                       "registers",
                       line);
    }
    if (srcWhole && scope_.qregs.at(src.reg) != scope_.cregs.at(dst.reg)) {
      throw ParseError("whole-register measure requires equal register sizes",
                       line);
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  Scope scope_;
};

} // namespace

const char* assertionKindName(AssertionKind kind) {
  switch (kind) {
  case AssertionKind::Superposition:
    return "superposition";
  case AssertionKind::Entanglement:
    return "entanglement";
  case AssertionKind::Equality:
    return "equality";
  }
  return "unknown";
}

SourceProgram parse(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

} // namespace qaref
