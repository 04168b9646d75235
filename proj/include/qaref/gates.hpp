/**
 * @file gates.hpp
 * @brief Builtin gate vocabulary and operator matrices.
 *
 * Supported builtins: x, y, z, h, s, sdg, t, tdg, rx, ry, rz, u1, u2, u3,
 * cx, cz, swap, ccx. Matrices are indexed little-endian with the first
 * operand as bit 0.
 */

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>

namespace qaref {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

struct GateArity {
  int qubits = 0;
  int params = 0;
};

/// Arity of a builtin gate, or nullopt for unknown names.
std::optional<GateArity> gateArity(const std::string& name);

/// Operator matrix of a builtin gate (2^k x 2^k, first operand = bit 0).
DenseMatrix gateMatrix(const std::string& name, std::span<const double> params);

} // namespace qaref
