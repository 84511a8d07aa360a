#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bentchain/chain.hpp"
#include "bentchain/engine.hpp"
#include "bentchain/experiments.hpp"
#include "bentchain/schemes.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace bentchain;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // numeric / verification failure
constexpr int kExitUsage = 2;    // bad arguments

struct CommonArgs {
  int n = 10;
  double lambda = 1.0;
  std::optional<int> alpha;
  std::string gamma = "default";
  bool no_bend = false;
  std::optional<double> b_uniform;
  std::optional<double> disorder;
  uint64_t seed = 0;
  std::string config_path;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

ChainSpec make_chain(const CommonArgs& a, const json& config) {
  ChainSpec spec;
  if (config.contains("chain")) {
    spec = chain_spec_from_json_text(config.at("chain").dump());
  } else {
    spec.n_qubits = a.n;
    spec.lambda = a.lambda;
  }
  if (a.b_uniform) spec.eigenenergies.assign(spec.n_qubits, *a.b_uniform);
  if (a.disorder) {
    spec.eigenenergies = disorder_eigenenergies(spec.n_qubits, *a.disorder,
                                                spec.lambda, a.seed);
    spec.disorder_beta = *a.disorder;
    spec.disorder_seed = a.seed;
  }
  if (!a.no_bend && !config.contains("chain")) {
    // Default bend sits at the chain middle; N = 2 has no interior position.
    int alpha = a.alpha.value_or(middle_alpha(spec.n_qubits));
    if (a.alpha || spec.n_qubits >= 3) {
      spec.bend_alpha = alpha;
      if (a.gamma != "default") spec.bend_gamma = std::stod(a.gamma);
    }
  }
  if (a.no_bend) {
    spec.bend_alpha.reset();
    spec.bend_gamma.reset();
  }
  spec.validate();
  return spec;
}

void add_common_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--n", a.n, "chain length N")->capture_default_str();
  cmd->add_option("--lambda", a.lambda, "coupling scale lambda")
      ->capture_default_str();
  cmd->add_option("--alpha", a.alpha,
                  "bend position (default: middle of the chain)");
  cmd->add_option("--gamma", a.gamma,
                  "bend strength, a number or 'default' for the 0.4*max{...} "
                  "formula")
      ->capture_default_str();
  cmd->add_flag("--no-bend", a.no_bend, "simulate the ideal chain (gamma = 0)");
  cmd->add_option("--b", a.b_uniform, "uniform eigenenergy B on every qubit");
  cmd->add_option("--disorder", a.disorder,
                  "diagonal disorder: B_i uniform in [-beta*lambda, beta*lambda]");
  cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
  cmd->add_option("--config", a.config_path, "JSON config file");
}

json summary_config(const CommonArgs& a, const ChainSpec& chain,
                    const json& file_config) {
  json cfg;
  cfg["chain"] = json::parse(chain_spec_to_json_text(chain));
  cfg["seed"] = a.seed;
  if (!file_config.empty()) cfg["config_file"] = file_config;
  return cfg;
}

int cmd_trace(const CommonArgs& a, const std::string& scheme_name, int reps,
              bool sdd, double time, int samples_per_period, int trajectories,
              double timing_q, double theta, const std::string& theta_units,
              const std::string& outdir) {
  const json file_config = load_config(a.config_path);
  TraceRunConfig cfg;
  cfg.chain = make_chain(a, file_config);
  cfg.scheme.name = scheme_name + (sdd && scheme_name != "none" ? "+sdd" : "");
  cfg.scheme.reps_per_period = reps;
  cfg.total_time = time;
  cfg.samples_per_period = samples_per_period;
  cfg.error.timing_q = timing_q;
  cfg.error.theta_coeff = theta;
  if (theta_units == "radians") {
    cfg.error.theta_units = ErrorModel::ThetaUnits::Radians;
  } else if (theta_units != "lambda_dt") {
    throw CLI::ValidationError("--theta-units", "must be lambda_dt or radians");
  }
  cfg.trajectories = trajectories;
  cfg.seed = a.seed;

  const TraceRunResult res = run_trace(cfg);

  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const std::string csv_path = (fs::path(outdir) / "trace.csv").string();
  write_trace_csv(csv_path, res.trace);

  json summary;
  summary["curves"] = json::array();
  json curve;
  curve["label"] = res.summary.label;
  curve["peak_t"] = res.summary.peak_t;
  curve["peak_F"] = res.summary.peak_fidelity;
  curve["pulses_per_period"] = res.summary.pulses_per_period;
  curve["pulses_per_period_physical"] = res.summary.pulses_per_period_physical;
  curve["scheme"] = res.summary.scheme;
  curve["reps"] = res.summary.reps;
  curve["expected_peak_t"] = res.summary.expected_peak_t;
  summary["curves"].push_back(curve);
  json cfg_json = summary_config(a, cfg.chain, file_config);
  cfg_json["scheme"] = cfg.scheme.name;
  cfg_json["reps"] = reps;
  cfg_json["requested_time"] = time;
  cfg_json["actual_time"] = res.actual_total_time;
  cfg_json["samples_per_period"] = samples_per_period;
  cfg_json["trajectories"] = trajectories;
  cfg_json["errors"] =
      json::parse(error_config_to_json_text({cfg.error, trajectories, a.seed}));
  summary["config"] = cfg_json;
  summary["seed"] = a.seed;
  summary["version"] = kVersion;
  write_text_file((fs::path(outdir) / "summary.json").string(),
                  summary.dump(2) + "\n");

  std::cout << "trace: scheme=" << cfg.scheme.name << " reps=" << reps
            << " peak F=" << res.summary.peak_fidelity
            << " at t=" << res.summary.peak_t << " (files in " << outdir
            << ")\n";
  return kExitOk;
}

int cmd_verify(const CommonArgs& a, const std::string& scheme_name, bool sdd,
               bool show_scheme) {
  const json file_config = load_config(a.config_path);
  ChainSpec chain = make_chain(a, file_config);
  const int n = chain.n_qubits;
  const int alpha = chain.bend_alpha.value_or(middle_alpha(n));
  const std::string full_name =
      scheme_name + (sdd && scheme_name != "none" ? "+sdd" : "");
  const DecouplingScheme scheme = scheme_by_name(full_name, n, alpha);

  const Hamiltonian h = build_hamiltonian(chain);
  Hamiltonian target(n);
  if (scheme_name == "none") {
    target = h;
  } else if (scheme_name == "complete") {
    target = ideal_hamiltonian(chain);
  } else {
    target = coupling_part(chain);
  }

  if (show_scheme) std::cout << scheme_listing(scheme);

  const AverageReport report = verify_selective(scheme, h, target);
  std::cout << "H_avg^(0) = " << report.average.str() << "\n";
  if (report.matches_target) {
    std::cout << "matches target with D = " << *report.scale << "\n";
    return kExitOk;
  }
  std::cout << "does NOT match target";
  if (report.scale) std::cout << " (candidate D = " << *report.scale << ")";
  std::cout << "\nresidual = " << report.residual.str() << "\n";
  return kExitFailure;
}

int cmd_experiment(const CommonArgs& a, const std::string& id,
                   const std::string& outdir, std::optional<int> trajectories,
                   std::optional<int> samples, std::optional<double> periods) {
  ExperimentSpec spec;
  spec.id = id;
  spec.outdir = outdir;
  spec.seed = a.seed;
  spec.trajectories = trajectories;
  spec.samples_per_period = samples;
  spec.total_periods = periods;
  const ExperimentResult res = run_figure(spec);
  std::cout << "experiment " << id << ": wrote " << res.files.size()
            << " files under " << (std::filesystem::path(outdir) / id).string()
            << "\n";
  for (const auto& c : res.curves) {
    std::cout << "  " << c.label << ": peak F=" << c.peak_fidelity
              << " at t=" << c.peak_t << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bentchain: numerically exact state-transfer simulation on bent XX "
      "chains under selective dynamical decoupling (time unit 1/lambda, "
      "lambda normalized to 1)"};
  app.require_subcommand(1);

  CommonArgs trace_args, verify_args, exp_args;

  auto* trace = app.add_subcommand("trace", "simulate one fidelity trace");
  add_common_flags(trace, trace_args);
  std::string scheme = "none";
  int reps = 1;
  bool sdd = false;
  double time = 3.0 * M_PI;
  int samples = 2000;
  int trajectories = 1;
  double timing_q = 0.0, theta = 0.0;
  std::string theta_units = "lambda_dt";
  std::string outdir = "out/trace";
  trace->add_option("--scheme", scheme,
                    "decoupling scheme: none|partial|complete|practical, "
                    "optionally with +sdd")
      ->capture_default_str();
  trace->add_option("--reps", reps, "scheme repetitions per pi/lambda period")
      ->capture_default_str();
  trace->add_flag("--sdd", sdd, "symmetrize the scheme (SDD)");
  trace->add_option("--time", time,
                    "total time in units 1/lambda (rounded to an integer "
                    "number of cycles when a scheme is active)")
      ->capture_default_str();
  trace->add_option("--samples", samples, "trace samples per pi/lambda")
      ->capture_default_str();
  trace->add_option("--trajectories", trajectories,
                    "Monte Carlo trajectories (timing jitter)")
      ->capture_default_str();
  trace->add_option("--timing-q", timing_q,
                    "timing jitter strength q (std dev = q*dt)")
      ->capture_default_str();
  trace->add_option("--theta", theta, "systematic pulse rotation coefficient")
      ->capture_default_str();
  trace->add_option("--theta-units", theta_units, "lambda_dt|radians")
      ->capture_default_str();
  trace->add_option("--out", outdir, "output directory")->capture_default_str();

  auto* verify =
      app.add_subcommand("verify", "check the selective decoupling condition "
                                   "H_avg^(0) = (1/D) H_target symbolically");
  add_common_flags(verify, verify_args);
  std::string vscheme = "none";
  bool vsdd = false, show_scheme = false;
  verify->add_option("--scheme", vscheme, "scheme name")->capture_default_str();
  verify->add_flag("--sdd", vsdd, "symmetrize the scheme (SDD)");
  verify->add_flag("--show-scheme", show_scheme,
                   "print the g and p operator listing");

  auto* exp = app.add_subcommand("experiment",
                                 "reproduce a figure-level experiment");
  add_common_flags(exp, exp_args);
  std::string exp_id;
  std::string exp_out = "out";
  std::optional<int> exp_traj;
  std::optional<int> exp_samples;
  std::optional<double> exp_periods;
  std::string ids;
  for (const auto& k : experiment_ids()) ids += (ids.empty() ? "" : "|") + k;
  exp->add_option("id", exp_id, "experiment id: " + ids)->required();
  exp->add_option("--out", exp_out, "output directory")->capture_default_str();
  exp->add_option("--trajectories", exp_traj, "Monte Carlo trajectories");
  exp->add_option("--samples", exp_samples, "trace samples per pi/lambda");
  exp->add_option("--periods", exp_periods, "total time in pi/lambda periods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (trace->parsed()) {
      return cmd_trace(trace_args, scheme, reps, sdd, time, samples,
                       trajectories, timing_q, theta, theta_units, outdir);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_args, vscheme, vsdd, show_scheme);
    }
    if (exp->parsed()) {
      return cmd_experiment(exp_args, exp_id, exp_out, exp_traj, exp_samples,
                            exp_periods);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
