#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bentchain/chain.hpp"
#include "bentchain/engine.hpp"
#include "bentchain/errors.hpp"
#include "bentchain/schemes.hpp"

namespace bentchain {

inline constexpr const char* kVersion = "0.1.0";

// Errors-module config schema:
// {"timing_q": f, "theta_coeff": f, "theta_units": "lambda_dt"|"radians",
//  "trajectories": n, "seed": s}
struct ErrorConfig {
  ErrorModel model;
  int trajectories = 200;
  uint64_t seed = 0;
};
ErrorConfig error_config_from_json_text(const std::string& text);
std::string error_config_to_json_text(const ErrorConfig& cfg);

struct SchemeSelection {
  std::string name = "none";  // registry name, may carry "+sdd"
  int reps_per_period = 1;    // scheme cycles per π/λ
};

// One protected (or free) trace on a chain: the scheme is repeated
// reps_per_period times per π/λ over an integer number of cycles.
struct TraceRunConfig {
  ChainSpec chain;
  SchemeSelection scheme;
  double total_time = 3.0 * M_PI;  // adjusted to an integer cycle count
  int samples_per_period = 2000;
  ErrorModel error;
  int trajectories = 1;
  uint64_t seed = 0;
  double peak_window_lo = 0.7;
  double peak_window_hi = 1.3;
};

struct CurveSummary {
  std::string label;
  std::string scheme;
  int reps = 0;
  int pulses_per_period = 0;           // paper convention: m' per cycle
  int pulses_per_period_physical = 0;  // non-identity pulses actually applied
  double peak_t = 0.0;
  double peak_fidelity = 0.0;
  double expected_peak_t = 0.0;
};

struct TraceRunResult {
  FidelityTrace trace;
  CurveSummary summary;
  double actual_total_time = 0.0;
};

TraceRunResult run_trace(const TraceRunConfig& cfg,
                         const Propagator* cached = nullptr);

double expected_peak_time(const std::string& scheme_name);

struct ExperimentSpec {
  std::string id;  // fig2..fig8, minpulse, phase
  std::string outdir = "out";
  uint64_t seed = 0;
  std::optional<int> n_qubits;
  std::optional<int> trajectories;
  std::optional<int> samples_per_period;
  std::optional<double> total_periods;
};

struct ExperimentResult {
  std::string id;
  std::vector<std::string> files;
  std::vector<CurveSummary> curves;
  std::string summary_path;
};

ExperimentResult run_figure(const ExperimentSpec& spec);

const std::vector<std::string>& experiment_ids();

struct MinPulseRow {
  int n_qubits = 0;
  std::string scheme;
  int reps = 0;
  int pulses_per_period = 0;
  int pulses_per_period_physical = 0;
  double peak_fidelity = 0.0;
  double peak_t = 0.0;
  bool saturated = false;
};

// Smallest reps-per-period (by unit increments) reaching first-peak
// F >= target on the protected timescale for each (N, scheme) cell; α sits at
// the chain middle with the default γ.
std::vector<MinPulseRow> min_pulse_search(int n_lo, int n_hi, double target_f,
                                          const std::vector<std::string>& schemes,
                                          int pulse_cap = 500,
                                          int samples_per_period = 800);

struct PhaseRow {
  int n_qubits = 0;
  std::string label;
  std::complex<double> measured;
  std::complex<double> expected;
  double abs_delta = 0.0;
  double fidelity = 0.0;
};

std::vector<PhaseRow> phase_check(int n_lo, int n_hi, uint64_t seed = 0);

// Artifact writers (CSV + JSON sidecar).
void write_trace_csv(const std::string& path, const FidelityTrace& trace);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bentchain
