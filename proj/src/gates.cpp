#include "qaref/gates.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qaref {

namespace {

DenseMatrix matrix2(Complex a, Complex b, Complex c, Complex d) {
  DenseMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

} // namespace

std::optional<GateArity> gateArity(const std::string& name) {
  static const std::map<std::string, GateArity> table = {
      {"x", {1, 0}},  {"y", {1, 0}},    {"z", {1, 0}},   {"h", {1, 0}},
      {"s", {1, 0}},  {"sdg", {1, 0}},  {"t", {1, 0}},   {"tdg", {1, 0}},
      {"rx", {1, 1}}, {"ry", {1, 1}},   {"rz", {1, 1}},  {"u1", {1, 1}},
      {"u2", {1, 2}}, {"u3", {1, 3}},   {"cx", {2, 0}},  {"cz", {2, 0}},
      {"swap", {2, 0}}, {"ccx", {3, 0}},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    return std::nullopt;
  }
  return it->second;
}

DenseMatrix gateMatrix(const std::string& name,
                       std::span<const double> params) {
  const Complex i{0.0, 1.0};
  const double invSqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "x") {
    return matrix2(0, 1, 1, 0);
  }
  if (name == "y") {
    return matrix2(0, -i, i, 0);
  }
  if (name == "z") {
    return matrix2(1, 0, 0, -1);
  }
  if (name == "h") {
    return matrix2(invSqrt2, invSqrt2, invSqrt2, -invSqrt2);
  }
  if (name == "s") {
    return matrix2(1, 0, 0, i);
  }
  if (name == "sdg") {
    return matrix2(1, 0, 0, -i);
  }
  if (name == "t") {
    return matrix2(1, 0, 0, std::exp(i * (std::numbers::pi / 4.0)));
  }
  if (name == "tdg") {
    return matrix2(1, 0, 0, std::exp(-i * (std::numbers::pi / 4.0)));
  }
  if (name == "rx") {
    const double half = params[0] / 2.0;
    return matrix2(std::cos(half), -i * std::sin(half), -i * std::sin(half),
                   std::cos(half));
  }
  if (name == "ry") {
    const double half = params[0] / 2.0;
    return matrix2(std::cos(half), -std::sin(half), std::sin(half),
                   std::cos(half));
  }
  if (name == "rz") {
    const double half = params[0] / 2.0;
    return matrix2(std::exp(-i * half), 0, 0, std::exp(i * half));
  }
  if (name == "u1") {
    return matrix2(1, 0, 0, std::exp(i * params[0]));
  }
  if (name == "u2") {
    const double phi = params[0];
    const double lambda = params[1];
    DenseMatrix m(2, 2);
    m << Complex{invSqrt2, 0}, -std::exp(i * lambda) * invSqrt2,
        std::exp(i * phi) * invSqrt2, std::exp(i * (phi + lambda)) * invSqrt2;
    return m;
  }
  if (name == "u3") {
    const double theta = params[0];
    const double phi = params[1];
    const double lambda = params[2];
    DenseMatrix m(2, 2);
    m << Complex{std::cos(theta / 2.0), 0},
        -std::exp(i * lambda) * std::sin(theta / 2.0),
        std::exp(i * phi) * std::sin(theta / 2.0),
        std::exp(i * (phi + lambda)) * std::cos(theta / 2.0);
    return m;
  }
  if (name == "cx") {
    // bit 0 = control (first operand), bit 1 = target.
    DenseMatrix m = DenseMatrix::Zero(4, 4);
    for (int c = 0; c < 2; ++c) {
      for (int t = 0; t < 2; ++t) {
        const int from = c | (t << 1);
        const int to = c | ((t ^ c) << 1);
        m(to, from) = 1;
      }
    }
    return m;
  }
  if (name == "cz") {
    DenseMatrix m = DenseMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
  }
  if (name == "swap") {
    DenseMatrix m = DenseMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return m;
  }
  if (name == "ccx") {
    // bits 0,1 = controls, bit 2 = target.
    DenseMatrix m = DenseMatrix::Zero(8, 8);
    for (int idx = 0; idx < 8; ++idx) {
      const int c1 = idx & 1;
      const int c2 = (idx >> 1) & 1;
      const int t = (idx >> 2) & 1;
      const int to = c1 | (c2 << 1) | ((t ^ (c1 & c2)) << 2);
      m(to, idx) = 1;
    }
    return m;
  }
  throw std::invalid_argument("no matrix for gate '" + name + "'");
}

} // namespace qaref
