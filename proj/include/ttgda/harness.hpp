#pragma once

#include <json.hpp>

#include "ttgda/problems.hpp"
#include "ttgda/solvers.hpp"

namespace ttgda {

using Json = nlohmann::json;

struct ExperimentConfig {
  Json problem;  // {"kind": ..., parameters}
  std::string algorithm = "ttgda";  // ttgda | ttsgda | gdmax
  std::string regime = "custom";
  double eta_x = 0.0;  // custom-regime stepsizes
  double eta_y = 0.0;
  long batch_M = 1;
  double eps = kNaN;
  long T = 1000;
  std::uint64_t seed = 0;
  long diagnostics_every = 10;
  double inner_tol = 1e-6;
  long gdmax_inner_steps = 10;
  long retain_max = 0;
  double stop_metric_below = kNaN;
  std::string out;
  std::string data_path;
};

ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);

/// Structured validation; messages carry field paths. Empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Problem factory behind the CLI: bilinear, quadratic-ncsc(-demo),
/// robust-logreg (file or synthetic), wgan-linear. An optional sigma2
/// parameter wraps the oracle with an additive-Gaussian sampler.
Problem build_problem(const Json& spec, const std::string& data_path = "");

StepsizeSchedule build_schedule(const ExperimentConfig& cfg,
                                const RegularityProfile& profile);

struct ExperimentResult {
  RunTrace trace;
  StepsizeSchedule schedule;
  Json summary;
  std::string csv;
};

/// Runs the configured solver, assembles the versioned trace CSV and the
/// summary; when cfg.out is set both are persisted as trace.csv and
/// summary.json under that directory.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SweepCell {
  long index = 0;
  Json params;
  Json summary;
  bool ok = false;
  std::string error;
};

/// One run per grid cell with seeds derived from (seed, cell index); failures
/// stay isolated in their cell. The aggregate CSV is sorted by final metric.
std::vector<SweepCell> run_sweep(const ExperimentConfig& base, const Json& grid,
                                 const std::string& out_dir = "");

std::string sweep_csv(const std::vector<SweepCell>& cells);

struct CheckEntry {
  std::string name;
  double tolerance = 0.0;
  double worst_margin = 0.0;  // bound minus observed; negative = violation
  bool pass = false;
};

struct CheckReport {
  std::string problem;
  std::string suite;
  std::vector<CheckEntry> entries;
  bool all_pass = true;
  Json to_json() const;
};

/// Executes one of the named inequality/validation suites
/// {lemmas, rates, oracles} against a built-in problem.
CheckReport run_check_suite(const std::string& problem_name,
                            const std::string& suite,
                            const std::string& data_path = "");

/// Diagnostic metric for a problem under a regime: ||grad Phi|| when the
/// inner problem is strongly concave and smooth, else the Moreau-envelope
/// gradient norm at the regime's envelope parameter. Prefers closed-form
/// references when the problem provides them.
DiagnosticMetricFn make_metric(const Problem& problem, Regime regime,
                               double inner_tol, std::string* name_out,
                               long* diag_evals = nullptr);

}  // namespace ttgda
