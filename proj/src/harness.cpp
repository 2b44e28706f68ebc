#include "ttgda/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ttgda/stationarity.hpp"

namespace ttgda {

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

Regime regime_or_throw(const std::string& name) {
  const auto r = parse_regime(name);
  if (!r) throw std::invalid_argument("unknown regime: " + name);
  return *r;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig cfg;
  if (j.contains("problem")) cfg.problem = j.at("problem");
  cfg.algorithm = j.value("algorithm", cfg.algorithm);
  cfg.regime = j.value("regime", cfg.regime);
  cfg.eta_x = j.value("eta_x", cfg.eta_x);
  cfg.eta_y = j.value("eta_y", cfg.eta_y);
  cfg.batch_M = j.value("batch_M", cfg.batch_M);
  cfg.eps = j.value("eps", cfg.eps);
  cfg.T = j.value("T", cfg.T);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.diagnostics_every = j.value("diagnostics_every", cfg.diagnostics_every);
  cfg.inner_tol = j.value("inner_tol", cfg.inner_tol);
  cfg.gdmax_inner_steps = j.value("gdmax_inner_steps", cfg.gdmax_inner_steps);
  cfg.retain_max = j.value("retain_max", cfg.retain_max);
  cfg.stop_metric_below = j.value("stop_metric_below", cfg.stop_metric_below);
  cfg.out = j.value("out", cfg.out);
  cfg.data_path = j.value("data", cfg.data_path);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  Json j;
  in >> j;
  return config_from_json(j);
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  if (!cfg.problem.contains("kind"))
    errors.push_back("problem.kind: missing");
  if (cfg.algorithm != "ttgda" && cfg.algorithm != "ttsgda" &&
      cfg.algorithm != "gdmax")
    errors.push_back("algorithm: must be ttgda, ttsgda or gdmax");
  if (!parse_regime(cfg.regime))
    errors.push_back("regime: unknown value '" + cfg.regime + "'");
  if (cfg.T < 1) errors.push_back("T: must be >= 1");
  if (cfg.regime == "custom") {
    if (!(cfg.eta_x > 0.0) || !(cfg.eta_y > 0.0))
      errors.push_back("eta_x/eta_y: custom regime needs positive stepsizes");
  } else if (!(cfg.eps > 0.0)) {
    errors.push_back("eps: must be positive for a built-in regime");
  }
  if (!cfg.data_path.empty() && !fs::exists(cfg.data_path))
    errors.push_back("data: file does not exist: " + cfg.data_path);
  if (errors.empty()) {
    try {
      Problem p = build_problem(cfg.problem, cfg.data_path);
      if (cfg.algorithm == "ttsgda" && !p.oracle.has_stochastic())
        errors.push_back("algorithm: ttsgda requires a stochastic oracle");
      const auto regime = regime_or_throw(cfg.regime);
      if (regime != Regime::Custom) {
        for (auto& e : validate_profile(p.oracle.profile, regime))
          errors.push_back("profile." + e);
      }
    } catch (const std::exception& ex) {
      errors.push_back(std::string("problem: ") + ex.what());
    }
  }
  return errors;
}

Problem build_problem(const Json& spec, const std::string& data_path) {
  const std::string kind = spec.value("kind", "");
  if (kind == "bilinear") {
    return make_bilinear(spec.value("c", 1.0), spec.value("radius", 1.0));
  }
  if (kind == "quadratic-ncsc") {
    return make_quadratic_ncsc_demo(spec.value("dim_x", 5),
                                    spec.value("dim_y", 3),
                                    spec.value("kappa", 4.0),
                                    spec.value("gen_seed", 11ull));
  }
  if (kind == "robust-logreg") {
    DatasetLibsvm data;
    if (!data_path.empty()) {
      data = parse_libsvm_file(data_path);
    } else {
      data = synthetic_blobs(spec.value("N", 100), spec.value("d", 5),
                             spec.value("margin", 1.0),
                             spec.value("gen_seed", 3ull));
    }
    const int n = data.num_samples;
    Problem p = make_robust_logreg(
        data, spec.value("lambda1", 1.0 / (static_cast<double>(n) * n)),
        spec.value("lambda2", 1e-2), spec.value("alpha", 10.0));
    return p;
  }
  if (kind == "wgan-linear") {
    Problem p = make_wgan_linear(spec.value("mu_hat", 0.0),
                                 spec.value("sigma_hat", 0.1),
                                 spec.value("lambda", 1e-3),
                                 spec.value("y_radius", 5.0));
    return p;
  }
  throw std::invalid_argument("unknown problem kind: " + kind);
}

StepsizeSchedule build_schedule(const ExperimentConfig& cfg,
                                const RegularityProfile& profile) {
  const Regime regime = regime_or_throw(cfg.regime);
  if (regime == Regime::Custom)
    return schedule_custom(cfg.eta_x, cfg.eta_y, cfg.batch_M);
  return schedule_for(regime, profile, cfg.algorithm == "ttsgda", cfg.eps);
}

DiagnosticMetricFn make_metric(const Problem& problem, Regime regime,
                               double inner_tol, std::string* name_out,
                               long* diag_evals) {
  const MinimaxOracle& oracle = problem.oracle;
  const ConstraintSet set = problem.set;
  const double mu = oracle.profile.strong_concavity_mu;
  const double ell = oracle.profile.smooth_ell;
  const double rho = oracle.profile.weak_convexity_rho;

  // Phi is differentiable whenever the inner problem is smooth and strongly
  // concave; the explicit merely-concave and nonsmooth regimes ask for the
  // envelope lens instead.
  const bool use_grad_phi =
      mu > 0.0 && ell > 0.0 &&
      (regime == Regime::SmoothNcsc || regime == Regime::Custom);
  if (use_grad_phi) {
    if (name_out) *name_out = "grad_phi_norm";
    if (problem.grad_phi_ref) {
      auto ref = problem.grad_phi_ref;
      return [ref](long, const Vec& x, const Vec&) { return ref(x).norm(); };
    }
    MinimaxOracle o = oracle;
    return [o, set, inner_tol, diag_evals](long, const Vec& x, const Vec&) {
      GradPhiResult g = grad_phi(o, set, x, inner_tol);
      if (diag_evals) *diag_evals += g.grad_evals;
      return g.grad.norm();
    };
  }
  if (name_out) *name_out = "moreau_grad_norm";
  const double rho_hat = rho > 0.0 ? rho : std::max(ell, 1e-12);
  MinimaxOracle o = oracle;
  return [o, set, rho_hat, inner_tol, diag_evals](long, const Vec& x, const Vec&) {
    ProxResult pr;
    const double norm = moreau_grad_norm(o, set, x, rho_hat, inner_tol, &pr);
    if (diag_evals) *diag_evals += pr.grad_evals;
    return norm;
  };
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto errors = validate_config(cfg);
  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }

  Problem problem = build_problem(cfg.problem, cfg.data_path);
  if (cfg.problem.contains("sigma2"))
    problem.oracle =
        with_gaussian_noise(problem.oracle, cfg.problem["sigma2"].get<double>());
  const Regime regime = regime_or_throw(cfg.regime);

  ExperimentResult result;
  result.schedule = build_schedule(cfg, problem.oracle.profile);

  SolverConfig scfg;
  scfg.max_iters = cfg.T;
  scfg.schedule = result.schedule;
  scfg.seed = cfg.seed;
  scfg.diagnostics_every = cfg.diagnostics_every;
  scfg.inner_tol = cfg.inner_tol;
  scfg.stop_metric_below = cfg.stop_metric_below;
  scfg.retain_max = cfg.retain_max;
  long diag_evals = 0;
  scfg.diagnostic_metric =
      make_metric(problem, regime, cfg.inner_tol, &scfg.metric_name, &diag_evals);

  const Vec x0 = problem.default_x0, y0 = problem.default_y0;
  const auto t_start = std::chrono::steady_clock::now();
  if (cfg.algorithm == "ttgda") {
    result.trace = ttgda_run(problem.oracle, problem.set, scfg, x0, y0);
  } else if (cfg.algorithm == "ttsgda") {
    result.trace = ttsgda_run(problem.oracle, problem.set, scfg, x0, y0);
  } else {
    result.trace = gdmax_run(problem.oracle, problem.set, scfg,
                             cfg.gdmax_inner_steps, x0, y0);
  }
  const auto t_end = std::chrono::steady_clock::now();
  result.trace.diag_grad_evals = diag_evals;

  // delta-phi estimate over the visited region (exact when the problem knows
  // its minimum)
  double phi0 = kNaN;
  if (problem.phi_ref) {
    phi0 = problem.phi_ref(x0);
    double lo = std::isnan(problem.phi_min)
                    ? std::numeric_limits<double>::infinity()
                    : problem.phi_min;
    if (std::isnan(problem.phi_min))
      for (const auto& r : result.trace.records)
        lo = std::min(lo, problem.phi_ref(r.x));
    result.trace.delta_phi_estimate = phi0 - lo;

    // enrich diagnostics with the primal gap and tracking error where the
    // problem's closed forms make them free
    for (auto& d : result.trace.diagnostics) {
      if (const TraceRecord* r = result.trace.record_at(d.t)) {
        d.primal_gap = problem.phi_ref(r->x) - problem.oracle.value(r->x, r->y);
        if (problem.y_star_ref)
          d.tracking_err = (problem.y_star_ref(r->x) - r->y).squaredNorm();
      }
    }
  }

  // versioned CSV; fixed formatting keeps identical seeds byte-identical
  std::string csv = "# ttgda-trace-v1\n";
  csv += "t,metric_name,metric_value,f_value,grad_evals\n";
  for (const auto& d : result.trace.diagnostics) {
    csv += std::to_string(d.t) + "," + result.trace.metric_name + "," +
           fmt_double(d.metric) + "," + fmt_double(d.f_value) + "," +
           std::to_string(d.grad_evals) + "\n";
  }
  result.csv = csv;

  double min_metric = std::numeric_limits<double>::infinity();
  long min_metric_t = -1;
  for (const auto& d : result.trace.diagnostics) {
    if (d.metric < min_metric) {
      min_metric = d.metric;
      min_metric_t = d.t;
    }
  }

  Json sched_json = {
      {"regime", regime_name(result.schedule.regime)},
      {"eta_x", result.schedule.eta_x_const},
      {"eta_y", result.schedule.eta_y_const},
      {"batch_M", result.schedule.batch_M},
  };
  if (result.schedule.block_B > 0) sched_json["block_B"] = result.schedule.block_B;

  result.summary = Json{
      {"algorithm", cfg.algorithm},
      {"problem", cfg.problem},
      {"schedule", sched_json},
      {"T", cfg.T},
      {"iterations", result.trace.total_iters},
      {"seed", cfg.seed},
      {"status", run_status_name(result.trace.status)},
      {"x_hat_index", result.trace.selected_index},
      {"grad_evals", result.trace.grad_evals},
      {"oracle_calls", result.trace.oracle_calls},
      {"diag_grad_evals", result.trace.diag_grad_evals},
      {"metric_name", result.trace.metric_name},
      {"inner_tol", cfg.inner_tol},
      {"wall_time_ms",
       std::chrono::duration<double, std::milli>(t_end - t_start).count()},
  };
  if (result.trace.failure_t >= 0)
    result.summary["failure_t"] = result.trace.failure_t;
  if (std::isfinite(min_metric)) {
    result.summary["min_metric"] = min_metric;
    result.summary["min_metric_t"] = min_metric_t;
  }
  if (!std::isnan(result.trace.delta_phi_estimate))
    result.summary["delta_phi_estimate"] = result.trace.delta_phi_estimate;

  if (!cfg.out.empty()) {
    fs::create_directories(cfg.out);
    write_file_atomic(fs::path(cfg.out) / "trace.csv", result.csv);
    write_file_atomic(fs::path(cfg.out) / "summary.json",
                      result.summary.dump(2) + "\n");
  }
  return result;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& base, const Json& grid,
                                 const std::string& out_dir) {
  std::vector<double> eta_ys, ratios;
  std::vector<long> batches;
  for (const auto& v : grid.value("eta_y", Json::array({0.1, 1.0})))
    eta_ys.push_back(v.get<double>());
  for (const auto& v : grid.value("ratio", Json::array({10.0, 100.0, 1000.0})))
    ratios.push_back(v.get<double>());
  if (grid.contains("batch_M"))
    for (const auto& v : grid["batch_M"]) batches.push_back(v.get<long>());
  else
    batches.push_back(base.batch_M);
  if (eta_ys.empty() || ratios.empty() || batches.empty())
    throw std::invalid_argument("sweep: grid must be nonempty");

  std::vector<SweepCell> cells;
  long index = 0;
  for (const double ey : eta_ys) {
    for (const double ratio : ratios) {
      for (const long M : batches) {
        SweepCell cell;
        cell.index = index;
        cell.params = Json{{"eta_y", ey}, {"ratio", ratio}, {"batch_M", M}};
        ExperimentConfig cfg = base;
        cfg.regime = "custom";
        cfg.eta_y = ey;
        cfg.eta_x = ey / ratio;
        cfg.batch_M = M;
        cfg.seed = RngState::mix(base.seed ^ RngState::mix(
                                                 static_cast<std::uint64_t>(index)));
        cfg.out = out_dir.empty()
                      ? ""
                      : (fs::path(out_dir) / ("cell_" + std::to_string(index)))
                            .string();
        try {
          ExperimentResult r = run_experiment(cfg);
          cell.summary = r.summary;
          cell.ok = true;
        } catch (const std::exception& ex) {
          cell.error = ex.what();
        }
        cells.push_back(std::move(cell));
        ++index;
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const SweepCell& a, const SweepCell& b) {
                     const double ma = a.ok && a.summary.contains("min_metric")
                                           ? a.summary["min_metric"].get<double>()
                                           : std::numeric_limits<double>::infinity();
                     const double mb = b.ok && b.summary.contains("min_metric")
                                           ? b.summary["min_metric"].get<double>()
                                           : std::numeric_limits<double>::infinity();
                     return ma < mb;
                   });
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "sweep.csv", sweep_csv(cells));
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string csv = "# ttgda-sweep-v1\n";
  csv += "cell,eta_y,ratio,batch_M,status,min_metric,grad_evals\n";
  for (const auto& c : cells) {
    csv += std::to_string(c.index) + "," +
           fmt_double(c.params["eta_y"].get<double>()) + "," +
           fmt_double(c.params["ratio"].get<double>()) + "," +
           std::to_string(c.params["batch_M"].get<long>()) + ",";
    if (c.ok) {
      const double m = c.summary.contains("min_metric")
                           ? c.summary["min_metric"].get<double>()
                           : kNaN;
      csv += "ok," + fmt_double(m) + "," +
             std::to_string(c.summary["grad_evals"].get<long>());
    } else {
      csv += "error,nan,0";
    }
    csv += "\n";
  }
  return csv;
}

Json CheckReport::to_json() const {
  Json arr = Json::array();
  for (const auto& e : entries)
    arr.push_back(Json{{"name", e.name},
                       {"tolerance", e.tolerance},
                       {"worst_margin", e.worst_margin},
                       {"pass", e.pass}});
  return Json{{"problem", problem},
              {"suite", suite},
              {"all_pass", all_pass},
              {"checks", arr}};
}

namespace {

void add_entry(CheckReport& rep, const std::string& name, double tolerance,
               double worst_violation) {
  CheckEntry e;
  e.name = name;
  e.tolerance = tolerance;
  e.worst_margin = tolerance - worst_violation;
  e.pass = worst_violation <= tolerance;
  rep.all_pass = rep.all_pass && e.pass;
  rep.entries.push_back(std::move(e));
}

// worst violation of the finite-difference consistency of subgrad vs value
double fd_worst_violation(const MinimaxOracle& o, const ConstraintSet& set,
                          int samples, std::uint64_t seed) {
  RngState rng = RngState::seeded(seed);
  double worst = 0.0;
  const double h = 1e-6;
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.gaussian(o.dim_x);
    Vec y = set.project(set.center() + 0.25 * rng.gaussian(o.dim_y));
    const GradPair g = o.subgrad(x, y);
    double scale = std::max({1.0, g.gx.norm(), g.gy.norm()});
    for (int j = 0; j < o.dim_x; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double fd = (o.value(xp, y) - o.value(xm, y)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g.gx[j]) / scale);
    }
    for (int j = 0; j < o.dim_y; ++j) {
      Vec yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      const double fd = (o.value(x, yp) - o.value(x, ym)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g.gy[j]) / scale);
    }
  }
  return worst;
}

void oracles_suite(CheckReport& rep, const Problem& p) {
  add_entry(rep, "finite-difference-consistency", 1e-5,
            fd_worst_violation(p.oracle, p.set, 20, 101));

  // projection properties on the problem's set
  RngState rng = RngState::seeded(7);
  double worst_idem = 0.0, worst_nonexp = 0.0, worst_var = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec u = 2.0 * rng.gaussian(p.set.dim());
    const Vec v = 2.0 * rng.gaussian(p.set.dim());
    const Vec pu = p.set.project(u), pv = p.set.project(v);
    worst_idem = std::max(worst_idem, (p.set.project(pu) - pu).norm());
    worst_nonexp =
        std::max(worst_nonexp, (pu - pv).norm() - (u - v).norm());
    worst_var = std::max(worst_var, (u - pu).dot(pv - pu));
  }
  add_entry(rep, "projection-idempotence", 0.0, worst_idem);
  add_entry(rep, "projection-nonexpansive", 1e-12, worst_nonexp);
  add_entry(rep, "projection-variational", 1e-10, worst_var);

  if (p.oracle.has_stochastic()) {
    // sampler mean against the deterministic subgradient
    RngState srng = RngState::seeded(33);
    const Vec x = p.default_x0, y = p.default_y0;
    const int draws = 20000;
    Vec mx = Vec::Zero(p.oracle.dim_x), my = Vec::Zero(p.oracle.dim_y);
    for (int i = 0; i < draws; ++i) {
      const GradPair g = p.oracle.stochastic_sample(x, y, srng);
      mx += g.gx;
      my += g.gy;
    }
    mx /= draws;
    my /= draws;
    const GradPair g = p.oracle.subgrad(x, y);
    const double sig = std::sqrt(std::max(p.oracle.profile.noise_var_sigma2, 1e-12));
    const double band = 5.0 * sig / std::sqrt(static_cast<double>(draws));
    add_entry(rep, "sampler-unbiased", band,
              std::max((mx - g.gx).norm(), (my - g.gy).norm()));
  }
}

void lemmas_suite(CheckReport& rep, const Problem& p) {
  const auto& prof = p.oracle.profile;
  if (!(prof.strong_concavity_mu > 0.0) || !p.grad_phi_ref || !p.y_star_ref) {
    add_entry(rep, "lemmas-suite-requires-strongly-concave-references", 0.0, 1.0);
    return;
  }
  const double kappa = prof.kappa, ell = prof.smooth_ell;

  SolverConfig scfg;
  scfg.max_iters = 500;
  scfg.schedule = schedule_smooth_ncsc(prof, false, kNaN);
  scfg.seed = 5;
  RunTrace trace = ttgda_run(p.oracle, p.set, scfg, p.default_x0, p.default_y0);
  const double eta_x = scfg.schedule.eta_x_const;

  double worst_delta = -1e300, worst_descent = -1e300;
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const auto& prev = trace.records[i - 1];
    const auto& cur = trace.records[i];
    const double d_prev = (p.y_star_ref(prev.x) - prev.y).squaredNorm();
    const double d_cur = (p.y_star_ref(cur.x) - cur.y).squaredNorm();
    const double gp = p.grad_phi_ref(prev.x).norm();
    const double rhs_delta =
        (1.0 - 1.0 / (2.0 * kappa) + 4.0 * std::pow(kappa, 3) * ell * ell * eta_x * eta_x) *
            d_prev +
        4.0 * std::pow(kappa, 3) * eta_x * eta_x * gp * gp;
    worst_delta = std::max(worst_delta, d_cur - rhs_delta);
    const double rhs_descent = p.phi_ref(prev.x) -
                               (7.0 * eta_x / 16.0) * gp * gp +
                               (9.0 * eta_x * ell * ell / 16.0) * d_prev;
    worst_descent = std::max(worst_descent, p.phi_ref(cur.x) - rhs_descent);
  }
  add_entry(rep, "tracking-error-recursion", 1e-6, worst_delta);
  add_entry(rep, "descent-inequality", 1e-6, worst_descent);

  // envelope descent at the proximal point
  RngState rng = RngState::seeded(21);
  double worst_env = -1e300;
  const double rho_hat = std::max(prof.weak_convexity_rho, 1e-3);
  for (int i = 0; i < 10; ++i) {
    const Vec x = rng.gaussian(p.oracle.dim_x);
    ProxResult pr = prox_phi(p.oracle, p.set, x, rho_hat, 1e-6);
    worst_env = std::max(worst_env, p.phi_ref(pr.prox_point) - p.phi_ref(x));
  }
  add_entry(rep, "envelope-descent", 2e-6, worst_env);

  // y* is kappa-Lipschitz and grad Phi is 2*kappa*ell-Lipschitz
  double worst_ystar = -1e300, worst_phi_smooth = -1e300;
  for (int i = 0; i < 500; ++i) {
    const Vec x1 = rng.gaussian(p.oracle.dim_x);
    const Vec x2 = rng.gaussian(p.oracle.dim_x);
    const double dx = (x1 - x2).norm();
    if (dx < 1e-12) continue;
    worst_ystar = std::max(
        worst_ystar, (p.y_star_ref(x1) - p.y_star_ref(x2)).norm() - kappa * dx);
    worst_phi_smooth =
        std::max(worst_phi_smooth, (p.grad_phi_ref(x1) - p.grad_phi_ref(x2)).norm() -
                                       2.0 * kappa * ell * dx);
  }
  add_entry(rep, "y-star-lipschitz", 1e-9, worst_ystar);
  add_entry(rep, "grad-phi-lipschitz", 1e-9, worst_phi_smooth);
}

void rates_suite(CheckReport& rep, const Problem& p) {
  const auto& prof = p.oracle.profile;
  if (!(prof.strong_concavity_mu > 0.0) || !p.grad_phi_ref || !p.phi_ref) {
    add_entry(rep, "rates-suite-requires-strongly-concave-references", 0.0, 1.0);
    return;
  }
  const double kappa = prof.kappa, ell = prof.smooth_ell, D = prof.diameter_D;

  SolverConfig scfg;
  scfg.max_iters = 1000;
  scfg.schedule = schedule_smooth_ncsc(prof, false, kNaN);
  scfg.seed = 5;
  RunTrace trace = ttgda_run(p.oracle, p.set, scfg, p.default_x0, p.default_y0);

  const double phi0 = p.phi_ref(p.default_x0);
  double phi_lo = std::isnan(p.phi_min) ? phi0 : p.phi_min;
  if (std::isnan(p.phi_min))
    for (const auto& r : trace.records) phi_lo = std::min(phi_lo, p.phi_ref(r.x));
  const double delta_phi = phi0 - phi_lo;
  const double bound_const =
      128.0 * kappa * kappa * ell * delta_phi + 5.0 * kappa * ell * ell * D * D;

  double running = 0.0, worst = -1e300;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const double g = p.grad_phi_ref(trace.records[i].x).norm();
    running += g * g;
    const double avg = running / static_cast<double>(i + 1);
    worst = std::max(worst, avg - bound_const / static_cast<double>(i + 1));
  }
  add_entry(rep, "running-average-bound", 1e-6, worst);
}

}  // namespace

CheckReport run_check_suite(const std::string& problem_name,
                            const std::string& suite,
                            const std::string& data_path) {
  Json spec = Json{{"kind", problem_name}};
  Problem p = build_problem(spec, data_path);
  CheckReport rep;
  rep.problem = problem_name;
  rep.suite = suite;
  if (suite == "oracles") {
    oracles_suite(rep, p);
  } else if (suite == "lemmas") {
    lemmas_suite(rep, p);
  } else if (suite == "rates") {
    rates_suite(rep, p);
  } else {
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected lemmas, rates or oracles)");
  }
  return rep;
}

}  // namespace ttgda
