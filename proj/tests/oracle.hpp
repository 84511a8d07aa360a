#pragma once

// Test-only dense-matrix oracles, built directly from the 2x2 Pauli matrices
// and explicit Kronecker products. Deliberately independent of the bitmask
// algebra they check.

#include <complex>

#include <Eigen/Dense>

#include "bentchain/chain.hpp"
#include "bentchain/pauli.hpp"

namespace oracle {

inline Eigen::Matrix2cd mat(bentchain::Pauli p) {
  using std::complex;
  Eigen::Matrix2cd m;
  switch (p) {
    case bentchain::Pauli::I: m << 1, 0, 0, 1; break;
    case bentchain::Pauli::X: m << 0, 1, 1, 0; break;
    case bentchain::Pauli::Y:
      m << 0, complex<double>(0, -1), complex<double>(0, 1), 0;
      break;
    case bentchain::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Qubit 1 occupies the least significant bit, so it is the last Kronecker
// factor: M = mat(f_N) ⊗ ... ⊗ mat(f_1).
inline Eigen::MatrixXcd dense(const bentchain::PauliString& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = s.n_qubits(); q >= 1; --q) {
    m = kron(m, mat(s.factor(q)));
  }
  return s.phase() * m;
}

inline Eigen::MatrixXcd dense(const bentchain::Hamiltonian& h) {
  const Eigen::Index dim = Eigen::Index(1) << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    m += t.coeff * dense(t.op);
  }
  return m;
}

}  // namespace oracle
