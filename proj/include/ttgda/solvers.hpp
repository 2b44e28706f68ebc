#pragma once

#include "ttgda/core.hpp"
#include "ttgda/geometry.hpp"
#include "ttgda/schedules.hpp"

namespace ttgda {

using DiagnosticMetricFn = std::function<double(long t, const Vec& x, const Vec& y)>;

struct SolverConfig {
  long max_iters = 1000;  // T
  StepsizeSchedule schedule;
  std::uint64_t seed = 0;
  long diagnostics_every = 0;  // 0 = no in-loop diagnostics
  double inner_tol = 1e-6;     // recorded tolerance for diagnostic solves
  DiagnosticMetricFn diagnostic_metric;
  std::string metric_name = "none";
  double stop_metric_below = kNaN;  // early stop once the metric drops below
  long retain_max = 0;  // 0 = retain every iterate; else reservoir of this size
};

/// Simultaneous descent on x and projected ascent on y with per-iteration
/// stepsizes from the schedule. Returns the full trace together with an
/// iterate x-hat drawn uniformly from {x_0, ..., x_T} using the seeded rng.
RunTrace ttgda_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                   const SolverConfig& config, const Vec& x0, const Vec& y0);

/// Averages M independent sampler draws at (x, y). Advances rng
/// deterministically; the caller owns evaluation accounting.
GradPair sg_minibatch(const MinimaxOracle& oracle, long M, const Vec& x,
                      const Vec& y, RngState& rng);

/// Stochastic variant: each iteration feeds a size-batch_M minibatch average
/// into the same update as ttgda_run. Deterministic given (seed, config).
RunTrace ttsgda_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                    const SolverConfig& config, const Vec& x0, const Vec& y0);

/// Inner maximization at frozen x: y <- P_Y(y + eta * grad_y f(x, y)).
Vec projected_gradient_ascent(const MinimaxOracle& oracle,
                              const ConstraintSet& set, const Vec& x, Vec y,
                              long steps, double eta);

struct SaddleResult {
  Vec x;
  Vec y;
  double residual = kNaN;  // max of x-gradient norm and y gradient-mapping norm
  long iterations = 0;
  long grad_evals = 0;
  bool converged = false;
  RunStatus status = RunStatus::Ok;
};

/// Extrapolate-then-update iteration for the anchored saddle problem
/// min_x max_{y in Y} f(x, y) + reg * ||x - anchor||^2. The y-updates are
/// projected onto Y in both stages. Stops on the gradient residual when
/// stop_residual > 0, else after `steps` iterations.
SaddleResult extragradient_saddle(const MinimaxOracle& oracle,
                                  const ConstraintSet& set, const Vec& anchor,
                                  double reg, double eta, long steps,
                                  double stop_residual = 0.0,
                                  std::optional<Vec> x0 = std::nullopt,
                                  std::optional<Vec> y0 = std::nullopt);

/// Nested baseline: near-maximize y with inner_steps of projected gradient
/// ascent, then one descent step on x.
RunTrace gdmax_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                   const SolverConfig& config, long inner_steps, const Vec& x0,
                   const Vec& y0);

}  // namespace ttgda
