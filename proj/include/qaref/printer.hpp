/**
 * @file printer.hpp
 * @brief Pretty-printer emitting the extended dialect, one statement per line.
 */

#pragma once

#include "qaref/ast.hpp"
#include "qaref/program.hpp"

#include <string>

namespace qaref {

struct PrintOptions {
  /// Emit `// moved from line N` / `// added by <method>` trailers.
  bool annotations = false;
};

/// Print a parsed program verbatim (statement order preserved).
std::string print(const SourceProgram& program, PrintOptions options = {});

/**
 * @brief Convert a flat program back to statement form.
 *
 * Unbroken whole-register expansion groups collapse back to their original
 * single statement. If any assertion sits above a declaration, gate
 * definition or header, those are re-sunk to the top (original relative
 * order) so the output is valid input again.
 */
SourceProgram toSource(const FlatProgram& program);

/// Print a flat program (annotations reflect mover/refiner provenance).
std::string print(const FlatProgram& program, PrintOptions options = {});

/// Shortest representation of a double that parses back exactly.
std::string formatDouble(double value);

/// Complex literal in `a`, `bi`, `a+bi` or `a-bi` form.
std::string formatComplex(const std::complex<double>& value);

} // namespace qaref
