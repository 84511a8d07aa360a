#include "bentchain/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bentchain {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json curve_to_json(const CurveSummary& c) {
  json j;
  j["label"] = c.label;
  j["peak_t"] = c.peak_t;
  j["peak_F"] = c.peak_fidelity;
  j["pulses_per_period"] = c.pulses_per_period;
  j["pulses_per_period_physical"] = c.pulses_per_period_physical;
  j["scheme"] = c.scheme;
  j["reps"] = c.reps;
  j["expected_peak_t"] = c.expected_peak_t;
  return j;
}

json chain_json(const ChainSpec& spec) {
  return json::parse(chain_spec_to_json_text(spec));
}

}  // namespace

ErrorConfig error_config_from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ErrorConfig cfg;
  cfg.model.timing_q = j.value("timing_q", 0.0);
  cfg.model.theta_coeff = j.value("theta_coeff", 0.0);
  const std::string units = j.value("theta_units", std::string("lambda_dt"));
  if (units == "lambda_dt") {
    cfg.model.theta_units = ErrorModel::ThetaUnits::LambdaDt;
  } else if (units == "radians") {
    cfg.model.theta_units = ErrorModel::ThetaUnits::Radians;
  } else {
    throw std::invalid_argument("error config: bad theta_units '" + units + "'");
  }
  cfg.trajectories = j.value("trajectories", 200);
  cfg.seed = j.value("seed", uint64_t{0});
  return cfg;
}

std::string error_config_to_json_text(const ErrorConfig& cfg) {
  json j;
  j["timing_q"] = cfg.model.timing_q;
  j["theta_coeff"] = cfg.model.theta_coeff;
  j["theta_units"] = cfg.model.theta_units == ErrorModel::ThetaUnits::Radians
                         ? "radians"
                         : "lambda_dt";
  j["trajectories"] = cfg.trajectories;
  j["seed"] = cfg.seed;
  return j.dump();
}

double expected_peak_time(const std::string& scheme_name) {
  // The three paper schemes all scale the dynamics by D = 2.
  return (scheme_name == "none" || scheme_name.empty()) ? M_PI : 2.0 * M_PI;
}

TraceRunResult run_trace(const TraceRunConfig& cfg, const Propagator* cached) {
  cfg.chain.validate();
  const int n = cfg.chain.n_qubits;
  const Hamiltonian h = build_hamiltonian(cfg.chain);
  Propagator local;
  const Propagator* prop = cached;
  if (!prop) {
    local = Propagator::spectral_decompose(h);
    prop = &local;
  }

  ProtocolSpec ps;
  ps.seed = cfg.seed;
  ps.error = cfg.error;
  ps.peak_threshold = 0.5;

  TraceRunResult out;
  CurveSummary& cs = out.summary;
  cs.scheme = cfg.scheme.name;

  const bool free_run = cfg.scheme.name.empty() || cfg.scheme.name == "none";
  if (free_run) {
    ps.total_time = cfg.total_time;
    ps.sample_points = std::max(
        2, int(std::lround(cfg.samples_per_period * cfg.total_time / M_PI)));
    out.trace = run_protocol(*prop, ps);
    out.actual_total_time = cfg.total_time;
    cs.reps = 0;
  } else {
    const int alpha = cfg.chain.bend_alpha.value_or(middle_alpha(n));
    DecouplingScheme base = scheme_by_name(cfg.scheme.name, n, alpha);
    const int reps = cfg.scheme.reps_per_period;
    if (reps < 1) throw std::invalid_argument("run_trace: reps must be >= 1");
    // Integer number of cycles closest to the requested duration.
    const double cycle_time = M_PI / reps;
    int cycles = std::max(1, int(std::lround(cfg.total_time / cycle_time)));
    const double total = cycles * cycle_time;
    const PulseSequence cycle_pulses = to_pulses(base);
    ps.pulses = to_pulses(repeat_pdd(base, cycles));
    ps.total_time = total;
    ps.sample_points =
        std::max(2, int(std::lround(cfg.samples_per_period * total / M_PI)));
    if (cfg.trajectories > 1 && cfg.error.jittered()) {
      out.trace = run_protocol_mean(*prop, ps, cfg.trajectories);
    } else {
      out.trace = run_protocol(*prop, ps);
    }
    out.actual_total_time = total;
    cs.reps = reps;
    cs.pulses_per_period = base.size() * reps;
    cs.pulses_per_period_physical =
        cycle_pulses.physical_pulses_per_cycle() * reps;
  }

  cs.label = free_run ? "unprotected" : cfg.scheme.name;
  cs.expected_peak_t = expected_peak_time(cfg.scheme.name);
  if (auto peak = out.trace.transfer_peak(cs.expected_peak_t,
                                          cfg.peak_window_lo,
                                          cfg.peak_window_hi)) {
    cs.peak_t = peak->t;
    cs.peak_fidelity = peak->fidelity;
  }
  return out;
}

void write_trace_csv(const std::string& path, const FidelityTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "t_over_lambda_inv,fidelity\n";
  for (const auto& s : trace.samples) {
    out << fmt(s.t) << ',' << fmt(s.fidelity) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8",
      "minpulse", "phase"};
  return ids;
}

namespace {

struct FigureCurve {
  std::string label;
  bool bend = true;
  std::string scheme = "none";
  int reps = 0;
  double timing_q = 0.0;
  double theta_coeff = 0.0;
};

std::vector<MinPulseRow> search_cell(int n, const std::vector<std::string>& schemes,
                                     double target_f, int pulse_cap,
                                     int samples_per_period) {
  ChainSpec chain;
  chain.n_qubits = n;
  chain.bend_alpha = middle_alpha(n);
  const Hamiltonian h = build_hamiltonian(chain);
  const Propagator prop = Propagator::spectral_decompose(h);
  std::vector<MinPulseRow> rows;
  for (const auto& name : schemes) {
    MinPulseRow row;
    row.n_qubits = n;
    row.scheme = name;
    row.saturated = true;
    for (int reps = 1;; ++reps) {
      const DecouplingScheme base = scheme_by_name(name, n, *chain.bend_alpha);
      const int pulses = base.size() * reps;
      if (pulses > pulse_cap) {
        row.reps = reps - 1;
        row.pulses_per_period = base.size() * (reps - 1);
        break;
      }
      TraceRunConfig cfg;
      cfg.chain = chain;
      cfg.scheme = {name, reps};
      cfg.total_time = 3.0 * M_PI;
      cfg.samples_per_period = samples_per_period;
      const TraceRunResult res = run_trace(cfg, &prop);
      if (res.summary.peak_fidelity >= target_f) {
        row.reps = reps;
        row.pulses_per_period = res.summary.pulses_per_period;
        row.pulses_per_period_physical = res.summary.pulses_per_period_physical;
        row.peak_fidelity = res.summary.peak_fidelity;
        row.peak_t = res.summary.peak_t;
        row.saturated = false;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<MinPulseRow> min_pulse_search(int n_lo, int n_hi, double target_f,
                                          const std::vector<std::string>& schemes,
                                          int pulse_cap, int samples_per_period) {
  if (target_f >= 1.0) {
    throw std::invalid_argument("min_pulse_search: target must be < 1");
  }
  if (n_lo < 4 || n_hi < n_lo) {
    throw std::invalid_argument("min_pulse_search: bad N range");
  }
  const int cells = n_hi - n_lo + 1;
  std::vector<std::vector<MinPulseRow>> per_n(cells);
  detail::parallel_for(cells, [&](int i) {
    per_n[i] = search_cell(n_lo + i, schemes, target_f, pulse_cap,
                           samples_per_period);
  });
  std::vector<MinPulseRow> rows;
  for (const auto& r : per_n) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

std::vector<PhaseRow> phase_check(int n_lo, int n_hi, uint64_t seed) {
  std::vector<PhaseRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    ChainSpec ideal;
    ideal.n_qubits = n;
    {
      const Propagator prop =
          Propagator::spectral_decompose(build_hamiltonian(ideal));
      const auto r = transfer_phase(prop, nullptr, M_PI);
      PhaseRow row{n, "ideal_B0", r.phase, expected_phase(n, 0.0, M_PI), 0.0,
                   r.fidelity};
      row.abs_delta = std::abs(row.measured - row.expected);
      rows.push_back(row);
    }
    {
      ChainSpec uniform = ideal;
      const double b = 0.25 * (n - 1) * uniform.lambda;
      uniform.eigenenergies.assign(n, b);
      const Propagator prop =
          Propagator::spectral_decompose(build_hamiltonian(uniform));
      const auto r = transfer_phase(prop, nullptr, M_PI);
      PhaseRow row{n, "ideal_B_no_phase_shift", r.phase,
                   expected_phase(n, b, M_PI), 0.0, r.fidelity};
      row.abs_delta = std::abs(row.measured - row.expected);
      rows.push_back(row);
    }
    {
      ChainSpec bent;
      bent.n_qubits = n;
      bent.bend_alpha = middle_alpha(n);
      bent.eigenenergies =
          disorder_eigenenergies(n, 0.3, bent.lambda, seed + n);
      bent.disorder_beta = 0.3;
      bent.disorder_seed = seed + n;
      const Propagator prop =
          Propagator::spectral_decompose(build_hamiltonian(bent));
      const int reps = 60;
      const auto seq =
          to_pulses(repeat_pdd(practical_scheme(n, *bent.bend_alpha), 2 * reps));
      const auto r = transfer_phase(prop, &seq, 2.0 * M_PI);
      PhaseRow row{n, "practical_disorder", r.phase,
                   expected_phase(n, 0.0, 0.0), 0.0, r.fidelity};
      row.abs_delta = std::abs(row.measured - row.expected);
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

void write_minpulse_csv(const std::string& path,
                        const std::vector<MinPulseRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "scheme,n_qubits,reps,pulses_per_period,pulses_per_period_physical,"
         "peak_F,peak_t,saturated\n";
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.n_qubits << ',' << r.reps << ','
        << r.pulses_per_period << ',' << r.pulses_per_period_physical << ','
        << fmt(r.peak_fidelity) << ',' << fmt(r.peak_t) << ','
        << (r.saturated ? 1 : 0) << '\n';
  }
}

void write_phase_csv(const std::string& path,
                     const std::vector<PhaseRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "n_qubits,case,measured_re,measured_im,expected_re,expected_im,"
         "abs_delta,fidelity\n";
  for (const auto& r : rows) {
    out << r.n_qubits << ',' << r.label << ',' << fmt(r.measured.real()) << ','
        << fmt(r.measured.imag()) << ',' << fmt(r.expected.real()) << ','
        << fmt(r.expected.imag()) << ',' << fmt(r.abs_delta) << ','
        << fmt(r.fidelity) << '\n';
  }
}

}  // namespace

ExperimentResult run_figure(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  const std::string id = spec.id == "minpulse" ? "fig6" : spec.id;
  bool known = false;
  for (const auto& k : experiment_ids()) known |= (k == spec.id);
  if (!known) throw std::invalid_argument("unknown experiment id '" + spec.id + "'");

  const fs::path dir = fs::path(spec.outdir) / spec.id;
  fs::create_directories(dir);

  ExperimentResult result;
  result.id = spec.id;

  json config;
  config["id"] = spec.id;
  config["seed"] = spec.seed;

  const int n = spec.n_qubits.value_or(10);
  const int trajectories = spec.trajectories.value_or(200);
  const int spp = spec.samples_per_period.value_or(2000);

  if (id == "fig6") {
    const std::vector<std::string> schemes = {"partial", "complete+sdd",
                                              "practical"};
    const auto rows = min_pulse_search(6, 11, 0.95, schemes);
    const std::string path = (dir / "minpulse.csv").string();
    write_minpulse_csv(path, rows);
    result.files.push_back(path);
    config["target_F"] = 0.95;
    config["n_range"] = {6, 11};
    config["schemes"] = schemes;
    json rows_json = json::array();
    for (const auto& r : rows) {
      json j;
      j["scheme"] = r.scheme;
      j["n_qubits"] = r.n_qubits;
      j["reps"] = r.reps;
      j["pulses_per_period"] = r.pulses_per_period;
      j["pulses_per_period_physical"] = r.pulses_per_period_physical;
      j["peak_F"] = r.peak_fidelity;
      j["peak_t"] = r.peak_t;
      j["saturated"] = r.saturated;
      rows_json.push_back(j);
    }
    json summary;
    summary["curves"] = json::array();
    summary["rows"] = rows_json;
    summary["config"] = config;
    summary["seed"] = spec.seed;
    summary["version"] = kVersion;
    const std::string spath = (dir / "summary.json").string();
    write_text_file(spath, summary.dump(2) + "\n");
    result.summary_path = spath;
    result.files.push_back(spath);
    return result;
  }

  if (spec.id == "phase") {
    const auto rows = phase_check(4, 8, spec.seed);
    const std::string path = (dir / "phase.csv").string();
    write_phase_csv(path, rows);
    result.files.push_back(path);
    json rows_json = json::array();
    for (const auto& r : rows) {
      json j;
      j["n_qubits"] = r.n_qubits;
      j["case"] = r.label;
      j["measured"] = {r.measured.real(), r.measured.imag()};
      j["expected"] = {r.expected.real(), r.expected.imag()};
      j["abs_delta"] = r.abs_delta;
      j["fidelity"] = r.fidelity;
      rows_json.push_back(j);
    }
    json summary;
    summary["curves"] = json::array();
    summary["rows"] = rows_json;
    summary["config"] = config;
    summary["seed"] = spec.seed;
    summary["version"] = kVersion;
    const std::string spath = (dir / "summary.json").string();
    write_text_file(spath, summary.dump(2) + "\n");
    result.summary_path = spath;
    result.files.push_back(spath);
    return result;
  }

  // Trace-style figures.
  std::vector<FigureCurve> curves;
  double periods = spec.total_periods.value_or(0.0);
  if (id == "fig2") {
    curves.push_back({"ideal", false});
    curves.push_back({"unprotected", true});
    if (periods <= 0) periods = 3.0;
  } else if (id == "fig3") {
    curves.push_back({"ideal", false});
    curves.push_back({"complete_r12", true, "complete", 12});
    curves.push_back({"complete_r60", true, "complete", 60});
    if (periods <= 0) periods = 7.0;
  } else if (id == "fig4") {
    curves.push_back({"ideal", false});
    curves.push_back({"complete_sdd_r6", true, "complete+sdd", 6});
    if (periods <= 0) periods = 7.0;
  } else if (id == "fig5") {
    curves.push_back({"ideal", false});
    curves.push_back({"partial_r5", true, "partial", 5});
    curves.push_back({"practical_r8", true, "practical", 8});
    if (periods <= 0) periods = 7.0;
  } else if (id == "fig7") {
    for (double q : {0.0, 0.1, 0.3, 0.5}) {
      std::ostringstream label;
      label << "jitter_q" << q;
      curves.push_back({label.str(), true, "practical", 8, q, 0.0});
    }
    if (periods <= 0) periods = 7.0;
  } else if (id == "fig8") {
    for (double c : {0.0, 0.05, 0.1, 0.2}) {
      std::ostringstream label;
      label << "theta_" << c;
      curves.push_back({label.str(), true, "practical", 8, 0.0, c});
    }
    if (periods <= 0) periods = 7.0;
  }

  ChainSpec bent;
  bent.n_qubits = n;
  bent.bend_alpha = middle_alpha(n);
  ChainSpec ideal;
  ideal.n_qubits = n;

  config["chain"] = chain_json(bent);
  config["total_periods"] = periods;
  config["samples_per_period"] = spp;
  config["trajectories"] = trajectories;

  // One decomposition per chain, shared across curves.
  const Propagator prop_bent =
      Propagator::spectral_decompose(build_hamiltonian(bent));
  std::optional<Propagator> prop_ideal;

  json curves_json = json::array();
  for (const auto& c : curves) {
    TraceRunConfig cfg;
    cfg.chain = c.bend ? bent : ideal;
    cfg.scheme = {c.scheme, std::max(1, c.reps)};
    if (c.scheme == "none") cfg.scheme.reps_per_period = 1;
    cfg.total_time = periods * M_PI;
    cfg.samples_per_period = spp;
    cfg.error.timing_q = c.timing_q;
    cfg.error.theta_coeff = c.theta_coeff;
    cfg.trajectories = c.timing_q > 0 ? trajectories : 1;
    cfg.seed = spec.seed;
    const Propagator* cached = &prop_bent;
    if (!c.bend) {
      if (!prop_ideal) {
        prop_ideal = Propagator::spectral_decompose(build_hamiltonian(ideal));
      }
      cached = &*prop_ideal;
    }
    TraceRunResult res = run_trace(cfg, cached);
    res.summary.label = c.label;
    const std::string path = (dir / (c.label + ".csv")).string();
    write_trace_csv(path, res.trace);
    result.files.push_back(path);
    result.curves.push_back(res.summary);
    curves_json.push_back(curve_to_json(res.summary));
  }

  json summary;
  summary["curves"] = curves_json;
  summary["config"] = config;
  summary["seed"] = spec.seed;
  summary["version"] = kVersion;
  const std::string spath = (dir / "summary.json").string();
  write_text_file(spath, summary.dump(2) + "\n");
  result.summary_path = spath;
  result.files.push_back(spath);
  return result;
}

}  // namespace bentchain
