/**
 * @file parser.hpp
 * @brief Parser for the extended OpenQASM 2 dialect (see docs/grammar.md).
 */

#pragma once

#include "qaref/ast.hpp"

#include <string>

namespace qaref {

/**
 * @brief Parse a complete program.
 *
 * Registers must be declared before use, gate bodies may only call gates
 * that are already defined (which rules out recursion), and assertion
 * targets are validated against the declared registers. Equality amplitude
 * vectors must have length 2^k for k resolved targets and unit norm within
 * 1e-6.
 *
 * @throws ParseError with the offending line/column on any violation.
 */
SourceProgram parse(const std::string& text);

} // namespace qaref
