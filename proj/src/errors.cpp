#include "bentchain/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace bentchain {

double ErrorModel::theta_for_gap(double nominal_dt) const {
  if (theta_coeff == 0.0) return 0.0;
  switch (theta_units) {
    case ThetaUnits::LambdaDt: return theta_coeff * nominal_dt;
    case ThetaUnits::Radians: return theta_coeff;
  }
  return 0.0;
}

std::vector<double> jittered_gaps(double dt, int count, double q,
                                  std::mt19937_64& rng) {
  if (q < 0.0) throw std::invalid_argument("jittered_gaps: q must be >= 0");
  std::vector<double> gaps(count, dt);
  if (q == 0.0) return gaps;
  std::normal_distribution<double> dist(dt, q * dt);
  for (auto& g : gaps) g = std::max(0.0, dist(rng));
  return gaps;
}

namespace {

// One factor of sigma * exp(-i theta sigma) = cos(theta) sigma - i sin(theta) I
// applied to the given qubit (1-based, bit q-1).
void apply_factor(Pauli p, int qubit, double c, double s, StateVector& psi) {
  using cplx = std::complex<double>;
  const int64_t dim = psi.size();
  const int64_t bit = int64_t{1} << (qubit - 1);
  const cplx mis(0.0, -s);  // -i sin(theta)
  for (int64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const int64_t b1 = b | bit;
    const cplx a0 = psi[b], a1 = psi[b1];
    switch (p) {
      case Pauli::X:
        psi[b] = mis * a0 + c * a1;
        psi[b1] = c * a0 + mis * a1;
        break;
      case Pauli::Y:
        psi[b] = mis * a0 + cplx(0.0, -c) * a1;
        psi[b1] = cplx(0.0, c) * a0 + mis * a1;
        break;
      case Pauli::Z:
        psi[b] = (c + mis) * a0;
        psi[b1] = (-c + mis) * a1;
        break;
      case Pauli::I:
        break;
    }
  }
}

}  // namespace

void apply_imperfect_pulse_inplace(const PauliString& p, double theta,
                                   StateVector& psi) {
  if (psi.size() != (int64_t{1} << p.n_qubits())) {
    throw std::invalid_argument("imperfect_pulse: dimension mismatch");
  }
  if (theta == 0.0) {
    if (!p.is_identity_factors() || p.phase_exponent() != 0) {
      psi = apply_to_state(p, psi);
    }
    return;
  }
  const double c = std::cos(theta), s = std::sin(theta);
  for (int q = 1; q <= p.n_qubits(); ++q) {
    const Pauli f = p.factor(q);
    if (f != Pauli::I) apply_factor(f, q, c, s, psi);
  }
  if (p.phase_exponent() != 0) psi *= p.phase();
}

StateVector imperfect_pulse(const PauliString& p, double theta,
                            const StateVector& psi) {
  StateVector out = psi;
  apply_imperfect_pulse_inplace(p, theta, out);
  return out;
}

}  // namespace bentchain
