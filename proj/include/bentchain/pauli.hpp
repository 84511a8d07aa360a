#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bentchain {

using StateVector = Eigen::VectorXcd;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// N-qubit tensor product of {I,X,Y,Z} with a global phase i^k, k in {0,1,2,3}.
// Factors are stored as a pair of bit masks (x, z) in the symplectic
// representation: qubit q (1-based) lives in bit q-1, Y = both bits set.
// Values are immutable; all operations return new strings.
class PauliString {
public:
  static constexpr int max_qubits = 64;

  explicit PauliString(int n_qubits);  // identity
  static PauliString identity(int n_qubits) { return PauliString(n_qubits); }
  static PauliString single(int n_qubits, int qubit, Pauli p);
  static PauliString from_masks(int n_qubits, uint64_t x, uint64_t z,
                                int phase_exponent = 0);
  // Grammar: optional phase prefix {+, -, i, -i, +i}, then whitespace-separated
  // letter+index tokens, e.g. "X1 X2", "Z3", "-i Y2 X5". "I" is the identity.
  static PauliString parse(std::string_view text, int n_qubits);

  int n_qubits() const { return n_; }
  uint64_t x_mask() const { return x_; }
  uint64_t z_mask() const { return z_; }
  int phase_exponent() const { return k_; }
  std::complex<double> phase() const;

  Pauli factor(int qubit) const;  // 1-based
  int weight() const;
  bool is_identity_factors() const { return x_ == 0 && z_ == 0; }
  bool is_identity() const { return x_ == 0 && z_ == 0 && k_ == 0; }
  bool is_hermitian() const { return k_ % 2 == 0; }

  bool commutes_with(const PauliString& other) const;
  PauliString adjoint() const;
  PauliString with_phase_exponent(int k) const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

private:
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  uint8_t k_ = 0;  // phase = i^k
  int n_ = 0;
};

// Exact group product a*b (phase is one of the four roots of unity).
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

// g† h g. Pauli conjugation preserves h's factors; the phase flips sign
// exactly when g and h anticommute.
PauliString conjugate(const PauliString& g, const PauliString& h);

// p|psi> as a signed permutation of amplitudes, O(2^n).
StateVector apply_to_state(const PauliString& p, const StateVector& psi);

}  // namespace bentchain
