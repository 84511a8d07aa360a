#pragma once

#include <random>
#include <vector>

#include "bentchain/pauli.hpp"

namespace bentchain {

// Pulse imperfections of two kinds: Gaussian timing jitter (gap ~ N(Δt, (qΔt)²),
// clamped at 0) and a systematic rotation offset θ applied per pulse factor.
// The figure captions quote θ as a multiple of Δt; the default reading scales
// the angle with the nominal inter-pulse gap, θ = coeff·(λΔt). The literal
// fixed-radians reading sits behind the units switch.
struct ErrorModel {
  double timing_q = 0.0;
  double theta_coeff = 0.0;
  enum class ThetaUnits { LambdaDt, Radians };
  ThetaUnits theta_units = ThetaUnits::LambdaDt;

  bool any() const { return timing_q > 0.0 || theta_coeff != 0.0; }
  bool jittered() const { return timing_q > 0.0; }
  // Rotation angle for a pulse whose nominal preceding gap is dt (lambda = 1
  // internally).
  double theta_for_gap(double nominal_dt) const;
};

// count samples from N(dt, (q dt)^2), each clamped at 0; q = 0 returns dt
// exactly.
std::vector<double> jittered_gaps(double dt, int count, double q,
                                  std::mt19937_64& rng);

// For each non-identity single-qubit factor σ of p, applies σ e^{-iθσ} =
// cosθ·σ - i sinθ·I on that qubit. θ = 0 reduces to the exact Pauli action.
void apply_imperfect_pulse_inplace(const PauliString& p, double theta,
                                   StateVector& psi);
StateVector imperfect_pulse(const PauliString& p, double theta,
                            const StateVector& psi);

}  // namespace bentchain
