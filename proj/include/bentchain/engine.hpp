#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bentchain/chain.hpp"
#include "bentchain/errors.hpp"
#include "bentchain/pauli.hpp"
#include "bentchain/schemes.hpp"

namespace bentchain {

inline constexpr int kDefaultMaxQubits = 14;

// Spectral decomposition of a fixed Hamiltonian, computed once and reused for
// every interval, repetition and trajectory. Hamiltonians whose dense matrix
// is real symmetric (even Y count per term) use a real eigenbasis, halving
// the per-interval matvec cost.
class Propagator {
public:
  static Propagator spectral_decompose(const Hamiltonian& h,
                                       int max_qubits = kDefaultMaxQubits);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return evals_.size(); }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  Eigen::MatrixXcd eigenvectors() const;
  bool real_basis() const { return real_; }

  StateVector evolve(const StateVector& psi, double dt) const;

  Eigen::VectorXcd to_eigen_basis(const StateVector& psi) const;
  StateVector from_eigen_basis(const Eigen::VectorXcd& phi) const;
  static void advance_phases(Eigen::VectorXcd& phi, const Eigen::VectorXd& evals,
                             double dt);

  // ||V diag(λ) V† - H||_F / ||H||_F, for the reconstruction invariant.
  double reconstruction_error(const Hamiltonian& h) const;

private:
  int n_ = 0;
  bool real_ = true;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd vr_;
  Eigen::MatrixXcd vc_;
};

struct TraceSample {
  double t = 0.0;
  double fidelity = 0.0;
};

// Time-stamped fidelity samples. `samples` is the dense lab-frame trace
// (uniform grid plus pulse boundaries when the schedule is deterministic);
// `frame_samples` holds the cycle-boundary values where the cumulative pulse
// product has returned to the identity — the toggled frame is closed there,
// so transfer peaks of pulsed runs are read from that series. Unpulsed runs
// use the dense trace for peaks.
struct FidelityTrace {
  std::vector<TraceSample> samples;
  std::vector<TraceSample> frame_samples;
  std::vector<TraceSample> peaks;
  double total_time = 0.0;
  bool pulsed = false;

  const std::vector<TraceSample>& peak_source() const {
    return pulsed && !frame_samples.empty() ? frame_samples : samples;
  }
  // Highest peak with t in [lo, hi]·t_expected; falls back to the highest
  // sample in the window.
  std::optional<TraceSample> transfer_peak(double t_expected, double lo = 0.7,
                                           double hi = 1.3) const;
};

std::vector<TraceSample> find_peaks(const std::vector<TraceSample>& series,
                                    double threshold);

struct ProtocolSpec {
  double total_time = M_PI;
  int sample_points = 2000;                 // uniform samples over [0, total_time]
  std::optional<PulseSequence> pulses;      // equally spaced over total_time
  ErrorModel error{};
  uint64_t seed = 0;
  double peak_threshold = 0.5;
  std::optional<StateVector> initial;       // default |1 0...0>
  std::optional<StateVector> target;        // default |0...0 1>

  // Jittered trajectories are evaluated exactly at the nominal grid times on
  // their realized schedules; frame samples are aligned by cycle index and
  // stamped with nominal boundary times.
};

// Fidelity F(t) = |<target|psi(t)>|^2 along the protocol of alternating free
// evolution under the full Hamiltonian and instantaneous pulses.
FidelityTrace run_protocol(const Propagator& prop, const ProtocolSpec& spec);
FidelityTrace run_protocol(const Hamiltonian& h, const ProtocolSpec& spec);

// Pointwise ensemble mean over seeded trajectories (seed, seed+1 stream
// derivation is internal and deterministic regardless of thread count).
FidelityTrace run_protocol_mean(const Propagator& prop, const ProtocolSpec& spec,
                                int trajectories);

StateVector protocol_final_state(const Propagator& prop,
                                 const ProtocolSpec& spec);

struct TransferPhaseResult {
  std::complex<double> phase;  // e^{iφ} between the transferred |1> and |0> parts
  double fidelity = 0.0;       // transfer fidelity of the |1> component
  bool reliable = false;       // fidelity >= 0.9
};

// Transfers (|0> + |1>)/√2 ⊗ |0...0> and reads the relative phase between the
// |0...0> and |0...01> components at total_time.
TransferPhaseResult transfer_phase(const Propagator& prop,
                                   const PulseSequence* seq, double total_time);
TransferPhaseResult transfer_phase(const Hamiltonian& h, const PulseSequence* seq,
                                   double total_time);

StateVector excitation_state(int n_qubits, int qubit);  // |0..1..0>, 1-based
StateVector vacuum_state(int n_qubits);

namespace detail {
int worker_threads(int jobs);
void parallel_for(int count, const std::function<void(int)>& fn);
}  // namespace detail

}  // namespace bentchain
