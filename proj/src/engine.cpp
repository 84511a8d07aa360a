#include "bentchain/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bentchain {

namespace detail {

int worker_threads(int jobs) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("BENTCHAIN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = v;
  }
  return std::max(1, std::min(n, jobs));
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = worker_threads(count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double fidelity_between(const StateVector& target, const StateVector& psi) {
  return std::norm(target.dot(psi));
}

// |<w| e^{-i evals delta} |phi>|^2 without leaving the eigenbasis.
double fidelity_after(const Eigen::VectorXcd& w, const Eigen::VectorXd& evals,
                      const Eigen::VectorXcd& phi, double delta) {
  std::complex<double> acc{0.0, 0.0};
  if (delta == 0.0) {
    acc = w.dot(phi);
  } else {
    const Eigen::Index dim = evals.size();
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double ang = -evals[j] * delta;
      acc += std::conj(w[j]) * phi[j] *
             std::complex<double>(std::cos(ang), std::sin(ang));
    }
  }
  return std::norm(acc);
}

}  // namespace

Propagator Propagator::spectral_decompose(const Hamiltonian& h, int max_qubits) {
  if (h.n_qubits() > max_qubits) {
    throw std::invalid_argument("spectral_decompose: qubit count over limit");
  }
  Propagator p;
  p.n_ = h.n_qubits();
  if (h.is_real()) {
    Eigen::MatrixXd m = h.dense().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("spectral_decompose: eigensolver failed");
    }
    p.real_ = true;
    p.evals_ = es.eigenvalues();
    p.vr_ = es.eigenvectors();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("spectral_decompose: eigensolver failed");
    }
    p.real_ = false;
    p.evals_ = es.eigenvalues();
    p.vc_ = es.eigenvectors();
  }
  return p;
}

Eigen::MatrixXcd Propagator::eigenvectors() const {
  if (real_) return vr_.cast<std::complex<double>>();
  return vc_;
}

Eigen::VectorXcd Propagator::to_eigen_basis(const StateVector& psi) const {
  if (real_) {
    const Eigen::VectorXd re = psi.real();
    const Eigen::VectorXd im = psi.imag();
    const Eigen::VectorXd a = vr_.transpose() * re;
    const Eigen::VectorXd b = vr_.transpose() * im;
    Eigen::VectorXcd out(a.size());
    out.real() = a;
    out.imag() = b;
    return out;
  }
  return vc_.adjoint() * psi;
}

StateVector Propagator::from_eigen_basis(const Eigen::VectorXcd& phi) const {
  if (real_) {
    const Eigen::VectorXd re = phi.real();
    const Eigen::VectorXd im = phi.imag();
    const Eigen::VectorXd a = vr_ * re;
    const Eigen::VectorXd b = vr_ * im;
    StateVector out(a.size());
    out.real() = a;
    out.imag() = b;
    return out;
  }
  return vc_ * phi;
}

void Propagator::advance_phases(Eigen::VectorXcd& phi,
                                const Eigen::VectorXd& evals, double dt) {
  const Eigen::Index dim = evals.size();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double ang = -evals[j] * dt;
    phi[j] *= std::complex<double>(std::cos(ang), std::sin(ang));
  }
}

StateVector Propagator::evolve(const StateVector& psi, double dt) const {
  if (psi.size() != dim()) {
    throw std::invalid_argument("evolve: dimension mismatch");
  }
  Eigen::VectorXcd phi = to_eigen_basis(psi);
  advance_phases(phi, evals_, dt);
  return from_eigen_basis(phi);
}

double Propagator::reconstruction_error(const Hamiltonian& h) const {
  const Eigen::MatrixXcd v = eigenvectors();
  const Eigen::MatrixXcd rebuilt =
      v * evals_.cast<std::complex<double>>().asDiagonal() * v.adjoint();
  const Eigen::MatrixXcd ref = h.dense();
  const double denom = std::max(ref.norm(), 1e-300);
  return (rebuilt - ref).norm() / denom;
}

std::vector<TraceSample> find_peaks(const std::vector<TraceSample>& series,
                                    double threshold) {
  std::vector<TraceSample> peaks;
  const size_t n = series.size();
  for (size_t i = 0; i < n; ++i) {
    const double f = series[i].fidelity;
    if (f < threshold) continue;
    const bool left_ok = (i == 0) || series[i - 1].fidelity <= f;
    const bool right_ok = (i + 1 == n) || series[i + 1].fidelity < f;
    if (left_ok && right_ok) peaks.push_back(series[i]);
  }
  return peaks;
}

std::optional<TraceSample> FidelityTrace::transfer_peak(double t_expected,
                                                        double lo,
                                                        double hi) const {
  const double t0 = lo * t_expected, t1 = hi * t_expected;
  std::optional<TraceSample> best;
  for (const auto& p : peaks) {
    if (p.t < t0 || p.t > t1) continue;
    if (!best || p.fidelity > best->fidelity) best = p;
  }
  if (best) return best;
  for (const auto& s : peak_source()) {
    if (s.t < t0 || s.t > t1) continue;
    if (!best || s.fidelity > best->fidelity) best = s;
  }
  return best;
}

StateVector excitation_state(int n_qubits, int qubit) {
  if (qubit < 1 || qubit > n_qubits) {
    throw std::out_of_range("excitation_state: bad qubit");
  }
  StateVector psi = StateVector::Zero(int64_t{1} << n_qubits);
  psi[int64_t{1} << (qubit - 1)] = 1.0;
  return psi;
}

StateVector vacuum_state(int n_qubits) {
  StateVector psi = StateVector::Zero(int64_t{1} << n_qubits);
  psi[0] = 1.0;
  return psi;
}

namespace {

struct RunContext {
  const Propagator* prop;
  const ProtocolSpec* spec;
  StateVector initial;
  StateVector target;
  Eigen::VectorXcd w;             // eigenbasis image of target
  std::vector<double> grid;       // dense sample times, strictly increasing
  int intervals = 0;
  double dt_nominal = 0.0;
  double theta = 0.0;
  bool pulsed = false;            // any non-identity pulse present
};

RunContext make_context(const Propagator& prop, const ProtocolSpec& spec) {
  if (spec.total_time <= 0.0) {
    throw std::invalid_argument("run_protocol: total_time must be > 0");
  }
  if (spec.sample_points < 0) {
    throw std::invalid_argument("run_protocol: sample_points must be >= 0");
  }
  RunContext ctx;
  ctx.prop = &prop;
  ctx.spec = &spec;
  const int n = prop.n_qubits();
  ctx.initial = spec.initial ? *spec.initial : excitation_state(n, 1);
  ctx.target = spec.target ? *spec.target : excitation_state(n, n);
  if (ctx.initial.size() != prop.dim() || ctx.target.size() != prop.dim()) {
    throw std::invalid_argument("run_protocol: state dimension mismatch");
  }
  ctx.w = prop.to_eigen_basis(ctx.target);

  if (spec.pulses) {
    if (spec.pulses->n_qubits != n) {
      throw std::invalid_argument("run_protocol: pulse dimension mismatch");
    }
    ctx.intervals = spec.pulses->intervals();
    if (ctx.intervals < 1) {
      throw std::invalid_argument("run_protocol: pulse sequence needs >= 1 interval");
    }
    ctx.dt_nominal = spec.total_time / ctx.intervals;
    ctx.theta = spec.error.theta_for_gap(ctx.dt_nominal);
    for (const auto& p : spec.pulses->pulses) {
      if (!p.is_identity_factors()) ctx.pulsed = true;
    }
  }

  // Uniform grid; nominal pulse boundaries are inserted when the schedule is
  // deterministic so the trace captures post-pulse values exactly.
  std::vector<double> times;
  const int pts = std::max(spec.sample_points, 2);
  if (spec.sample_points > 0) {
    for (int i = 0; i < pts; ++i) {
      times.push_back(spec.total_time * double(i) / double(pts - 1));
    }
  } else {
    times.push_back(0.0);
    times.push_back(spec.total_time);
  }
  if (spec.pulses && !spec.error.jittered()) {
    for (int k = 0; k <= ctx.intervals; ++k) {
      times.push_back(double(k) * ctx.dt_nominal);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  ctx.grid = std::move(times);
  return ctx;
}

// One trajectory on its realized schedule; dense fidelities are written
// aligned with ctx.grid, frame samples are stamped with nominal boundary
// times.
void run_trajectory(const RunContext& ctx, uint64_t seed,
                    std::vector<double>* dense_out,
                    std::vector<TraceSample>* frame_out,
                    StateVector* final_out) {
  const Propagator& prop = *ctx.prop;
  const ProtocolSpec& spec = *ctx.spec;
  StateVector psi = ctx.initial;

  if (!spec.pulses) {
    if (dense_out) {
      dense_out->resize(ctx.grid.size());
      const Eigen::VectorXcd phi = prop.to_eigen_basis(psi);
      for (size_t i = 0; i < ctx.grid.size(); ++i) {
        (*dense_out)[i] =
            fidelity_after(ctx.w, prop.eigenvalues(), phi, ctx.grid[i]);
      }
    }
    if (final_out) *final_out = prop.evolve(psi, spec.total_time);
    return;
  }

  const auto& pulses = spec.pulses->pulses;
  const int m = ctx.intervals;
  std::mt19937_64 rng(seed);
  std::vector<double> gaps = jittered_gaps(ctx.dt_nominal, m,
                                           spec.error.timing_q, rng);
  const bool jittered = spec.error.jittered();

  if (dense_out) dense_out->assign(ctx.grid.size(), 0.0);
  size_t si = 0;
  double t_real = 0.0;
  uint64_t cum_x = 0, cum_z = 0;

  auto apply_pulse = [&](const PauliString& p) {
    if (ctx.theta != 0.0) {
      apply_imperfect_pulse_inplace(p, ctx.theta, psi);
    } else if (!p.is_identity_factors() || p.phase_exponent() != 0) {
      psi = apply_to_state(p, psi);
    }
    cum_x ^= p.x_mask();
    cum_z ^= p.z_mask();
  };

  for (int k = 0; k < m; ++k) {
    apply_pulse(pulses[k]);
    if (frame_out && cum_x == 0 && cum_z == 0) {
      frame_out->push_back(
          {double(k) * ctx.dt_nominal, fidelity_between(ctx.target, psi)});
    }
    const double gap = gaps[k];
    const double t_next = jittered ? t_real + gap : double(k + 1) * ctx.dt_nominal;
    Eigen::VectorXcd phi = prop.to_eigen_basis(psi);
    if (dense_out) {
      while (si < ctx.grid.size() && ctx.grid[si] < t_next) {
        const double delta = std::max(0.0, ctx.grid[si] - t_real);
        (*dense_out)[si] =
            fidelity_after(ctx.w, prop.eigenvalues(), phi, delta);
        ++si;
      }
    }
    Propagator::advance_phases(phi, prop.eigenvalues(), gap);
    psi = prop.from_eigen_basis(phi);
    t_real = t_next;
  }
  apply_pulse(pulses[m]);
  if (frame_out && cum_x == 0 && cum_z == 0) {
    frame_out->push_back(
        {double(m) * ctx.dt_nominal, fidelity_between(ctx.target, psi)});
  }
  if (dense_out && si < ctx.grid.size()) {
    // Grid times past the realized schedule: keep evolving freely.
    const Eigen::VectorXcd phi = prop.to_eigen_basis(psi);
    for (; si < ctx.grid.size(); ++si) {
      const double delta = std::max(0.0, ctx.grid[si] - t_real);
      (*dense_out)[si] = fidelity_after(ctx.w, prop.eigenvalues(), phi, delta);
    }
  }
  if (final_out) *final_out = psi;
}

FidelityTrace assemble_trace(const RunContext& ctx,
                             std::vector<double> dense,
                             std::vector<TraceSample> frames) {
  FidelityTrace trace;
  trace.total_time = ctx.spec->total_time;
  trace.pulsed = ctx.pulsed;
  trace.samples.reserve(ctx.grid.size());
  for (size_t i = 0; i < ctx.grid.size(); ++i) {
    trace.samples.push_back({ctx.grid[i], dense[i]});
  }
  trace.frame_samples = std::move(frames);
  trace.peaks = find_peaks(trace.peak_source(), ctx.spec->peak_threshold);
  return trace;
}

}  // namespace

FidelityTrace run_protocol(const Propagator& prop, const ProtocolSpec& spec) {
  const RunContext ctx = make_context(prop, spec);
  std::vector<double> dense;
  std::vector<TraceSample> frames;
  run_trajectory(ctx, spec.seed, &dense, &frames, nullptr);
  return assemble_trace(ctx, std::move(dense), std::move(frames));
}

FidelityTrace run_protocol(const Hamiltonian& h, const ProtocolSpec& spec) {
  return run_protocol(Propagator::spectral_decompose(h), spec);
}

FidelityTrace run_protocol_mean(const Propagator& prop, const ProtocolSpec& spec,
                                int trajectories) {
  if (trajectories < 1) {
    throw std::invalid_argument("run_protocol_mean: trajectories must be >= 1");
  }
  if (trajectories == 1 || !spec.error.jittered()) {
    return run_protocol(prop, spec);
  }
  const RunContext ctx = make_context(prop, spec);
  std::vector<std::vector<double>> dense(trajectories);
  std::vector<std::vector<TraceSample>> frames(trajectories);
  detail::parallel_for(trajectories, [&](int i) {
    run_trajectory(ctx, splitmix64(spec.seed + uint64_t(i)), &dense[i],
                   &frames[i], nullptr);
  });
  std::vector<double> mean_dense(ctx.grid.size(), 0.0);
  for (int i = 0; i < trajectories; ++i) {
    for (size_t j = 0; j < mean_dense.size(); ++j) mean_dense[j] += dense[i][j];
  }
  for (auto& v : mean_dense) v /= trajectories;

  std::vector<TraceSample> mean_frames = frames[0];
  for (int i = 1; i < trajectories; ++i) {
    if (frames[i].size() != mean_frames.size()) {
      throw std::logic_error("run_protocol_mean: frame count mismatch");
    }
    for (size_t j = 0; j < mean_frames.size(); ++j) {
      mean_frames[j].fidelity += frames[i][j].fidelity;
    }
  }
  for (auto& s : mean_frames) s.fidelity /= trajectories;
  return assemble_trace(ctx, std::move(mean_dense), std::move(mean_frames));
}

StateVector protocol_final_state(const Propagator& prop,
                                 const ProtocolSpec& spec) {
  const RunContext ctx = make_context(prop, spec);
  StateVector out;
  run_trajectory(ctx, spec.seed, nullptr, nullptr, &out);
  return out;
}

TransferPhaseResult transfer_phase(const Propagator& prop,
                                   const PulseSequence* seq,
                                   double total_time) {
  const int n = prop.n_qubits();
  ProtocolSpec spec;
  spec.total_time = total_time;
  spec.sample_points = 0;
  if (seq) spec.pulses = *seq;
  StateVector init = (vacuum_state(n) + excitation_state(n, 1)) / std::sqrt(2.0);
  spec.initial = std::move(init);
  const StateVector psi = protocol_final_state(prop, spec);

  const std::complex<double> a0 = psi[0];
  const std::complex<double> a1 = psi[int64_t{1} << (n - 1)];
  TransferPhaseResult result;
  result.fidelity = 2.0 * std::norm(a1);
  result.reliable = result.fidelity >= 0.9 && std::abs(a0) > 1e-12;
  if (std::abs(a1) > 1e-300 && std::abs(a0) > 1e-300) {
    result.phase = (a1 / std::abs(a1)) * std::conj(a0 / std::abs(a0));
  } else {
    result.phase = {0.0, 0.0};
  }
  return result;
}

TransferPhaseResult transfer_phase(const Hamiltonian& h, const PulseSequence* seq,
                                   double total_time) {
  return transfer_phase(Propagator::spectral_decompose(h), seq, total_time);
}

}  // namespace bentchain
