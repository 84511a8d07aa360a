#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bentchain/pauli.hpp"

namespace bentchain {

struct HamiltonianTerm {
  double coeff;
  PauliString op;  // phase +1, Hermitian
};

// Weighted sum of Hermitian Pauli strings in canonical merged form: signs are
// folded into coefficients, no two terms share a factor pattern, insertion
// order is preserved.
class Hamiltonian {
public:
  explicit Hamiltonian(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  // Folds the string's ±1 phase into the coefficient and merges with any
  // existing term on the same factors. ±i phases are rejected (non-Hermitian).
  void add(double coeff, const PauliString& op);

  double coefficient_of(const PauliString& op) const;  // 0 if absent
  bool empty() const { return terms_.empty(); }

  Eigen::MatrixXcd dense() const;
  // True when every term has an even number of Y factors, i.e. the dense
  // matrix is real symmetric.
  bool is_real() const;

  std::string str() const;

private:
  int n_;
  std::vector<HamiltonianTerm> terms_;
};

// Chain description: eigenenergies B_i, coupling scale lambda, optional bend.
struct ChainSpec {
  int n_qubits = 2;
  double lambda = 1.0;
  std::vector<double> eigenenergies;  // empty = all zero; else size n_qubits
  std::optional<int> bend_alpha;      // in [2, N-1]
  std::optional<double> bend_gamma;   // nullopt with bend_alpha set = default formula

  // metadata carried through to output when eigenenergies came from a
  // disorder draw
  std::optional<double> disorder_beta;
  std::optional<uint64_t> disorder_seed;

  double eigenenergy(int qubit) const;  // 1-based
  bool has_bend() const { return bend_alpha.has_value(); }
  void validate() const;
};

// J_i = (lambda/2) sqrt(i(N-i)), i = 1..N-1.
std::vector<double> pst_couplings(int n_qubits, double lambda);

// gamma = 0.4 max{(λ/2)√((α−1)(N−α+1)), (λ/2)√(α(N−α))}.
double default_gamma(const ChainSpec& spec);
double default_gamma(int n_qubits, int alpha, double lambda);

double resolved_gamma(const ChainSpec& spec);

// Bent-chain Hamiltonian. Pauli coefficients are +B_i on Z_i, +J_i/2 on the
// XX/YY neighbour pairs and -gamma/2 on the bend pair, which gives the chain
// its single-excitation hopping amplitudes J_i (perfect transfer at t = π/λ
// with phase (-i)^{N-1}) and the bend hop -gamma.
Hamiltonian build_hamiltonian(const ChainSpec& spec);

// Coupling terms only (no Z terms, no bend): the selective-decoupling target.
Hamiltonian coupling_part(const ChainSpec& spec);
// Z terms plus couplings, no bend: the ideal chain.
Hamiltonian ideal_hamiltonian(const ChainSpec& spec);

// e^{iφ} = (-i)^{N-1} e^{2iBT} for a uniform-B ideal chain.
std::complex<double> expected_phase(int n_qubits, double b_uniform, double t);

// Bend position used by the figure experiments: (N+1)/2 for odd N, N/2+1 for
// even N.
int middle_alpha(int n_qubits);

// Uniform draw from [-beta*lambda, beta*lambda] per qubit.
std::vector<double> disorder_eigenenergies(int n_qubits, double beta,
                                           double lambda, uint64_t seed);

// JSON round trip (schema: n_qubits, lambda, eigenenergies, bend).
ChainSpec chain_spec_from_json_text(const std::string& text);
std::string chain_spec_to_json_text(const ChainSpec& spec);

}  // namespace bentchain
