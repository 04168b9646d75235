/**
 * @file linalg.hpp
 * @brief Dense quantum-state linear algebra on Eigen types.
 *
 * Everything here is a free function templated on the scalar (or on the
 * Eigen expression), so callers can pass expressions directly. State vectors
 * are indexed little-endian: qubit k corresponds to bit k of the amplitude
 * index. When a function takes an ordered qubit list, element j of the list
 * maps to bit j of the local index.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qaref {

/// Kronecker product, `a` providing the high (slow) bits.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace detail {

/// Scatter the bits of `local` into the global positions in `qubits`.
inline Eigen::Index expandIndex(Eigen::Index local,
                                std::span<const int> qubits) {
  Eigen::Index out = 0;
  for (size_t j = 0; j < qubits.size(); ++j) {
    out |= ((local >> j) & 1) << qubits[j];
  }
  return out;
}

} // namespace detail

/**
 * @brief Apply a 2^k x 2^k operator to the qubits listed in `targets`.
 *
 * `targets[0]` is bit 0 of the operator's basis index. The state is updated
 * in place; the operator need not be unitary (callers verify separately).
 */
template <typename Scalar>
void applyGate(
    Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>& state,
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>&
        op,
    std::span<const int> targets) {
  const auto k = static_cast<Eigen::Index>(targets.size());
  const Eigen::Index sub = Eigen::Index{1} << k;
  Eigen::Index mask = 0;
  for (const int t : targets) {
    mask |= Eigen::Index{1} << t;
  }
  Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic> scratch(sub);
  const Eigen::Index dim = state.size();
  for (Eigen::Index base = 0; base < dim; ++base) {
    if ((base & mask) != 0) {
      continue;  // visit each orbit once, from its all-zero representative
    }
    for (Eigen::Index s = 0; s < sub; ++s) {
      scratch(s) = state(base | detail::expandIndex(s, targets));
    }
    scratch = op * scratch;
    for (Eigen::Index s = 0; s < sub; ++s) {
      state(base | detail::expandIndex(s, targets)) = scratch(s);
    }
  }
}

/**
 * @brief Reduced density matrix of `state` over the ordered qubit list.
 *
 * Output index bit j corresponds to `targets[j]`; all other qubits are
 * traced out.
 */
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
partialTrace(const Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>& state,
             std::span<const int> targets, int numQubits) {
  std::vector<int> rest;
  rest.reserve(numQubits - targets.size());
  for (int q = 0; q < numQubits; ++q) {
    bool isTarget = false;
    for (const int t : targets) {
      isTarget = isTarget || (t == q);
    }
    if (!isTarget) {
      rest.push_back(q);
    }
  }
  const Eigen::Index dimT = Eigen::Index{1} << targets.size();
  const Eigen::Index dimR = Eigen::Index{1} << rest.size();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> rho =
      Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                    Eigen::Dynamic>::Zero(dimT, dimT);
  for (Eigen::Index r = 0; r < dimR; ++r) {
    const Eigen::Index restBits = detail::expandIndex(r, rest);
    for (Eigen::Index a = 0; a < dimT; ++a) {
      const Eigen::Index ia = restBits | detail::expandIndex(a, targets);
      for (Eigen::Index b = 0; b < dimT; ++b) {
        const Eigen::Index ib = restBits | detail::expandIndex(b, targets);
        rho(a, b) += state(ia) * std::conj(state(ib));
      }
    }
  }
  return rho;
}

/// Fidelity <psi|rho|psi> of a pure target state against a density matrix.
template <typename DerivedR, typename DerivedP>
double stateFidelity(const Eigen::MatrixBase<DerivedR>& rho,
                     const Eigen::MatrixBase<DerivedP>& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

/// Partial transpose of a two-qubit density matrix on the bit-0 subsystem.
template <typename Derived>
auto partialTransposeBit0(const Eigen::MatrixBase<Derived>& rho) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          out((b << 1) | ap, (bp << 1) | a) = rho((b << 1) | a, (bp << 1) | ap);
        }
      }
    }
  }
  return out;
}

/// Max modulus of U^dagger U - I; ~0 for unitary operators.
template <typename Derived>
double unitarityDefect(const Eigen::MatrixBase<Derived>& op) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram =
      op.adjoint() * op;
  return (gram - Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::
                     Identity(op.rows(), op.cols()))
      .cwiseAbs()
      .maxCoeff();
}

} // namespace qaref
