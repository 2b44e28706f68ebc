#include "ttgda/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace ttgda {

namespace {

constexpr double kDivergenceNorm = 1e8;
constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kSelectStream = 2;

bool finite(const Vec& v) { return v.allFinite(); }

struct SelectionState {
  // online uniform draw over all iterates seen so far (size-1 reservoir)
  RngState rng;
  long index = -1;
  Vec x;
  long seen = 0;

  void offer(long t, const Vec& xt) {
    ++seen;
    if (rng.uniform() < 1.0 / static_cast<double>(seen)) {
      index = t;
      x = xt;
    }
  }
};

struct Retention {
  long cap = 0;  // 0 = keep everything
  RngState rng;
  long seen = 0;

  void offer(std::vector<TraceRecord>& records, TraceRecord rec) {
    ++seen;
    if (cap <= 0 || static_cast<long>(records.size()) < cap) {
      records.push_back(std::move(rec));
      return;
    }
    // reservoir replacement keeps a uniform sample of the full trajectory
    const auto j = rng.uniform_index(static_cast<std::size_t>(seen));
    if (j < static_cast<std::size_t>(cap)) records[j] = std::move(rec);
  }
};

void maybe_diagnose(RunTrace& trace, const SolverConfig& cfg, long t,
                    const Vec& x, const Vec& y, const MinimaxOracle& oracle,
                    bool& stop) {
  if (cfg.diagnostics_every <= 0) return;
  const bool due = t == 0 || t % cfg.diagnostics_every == 0 ||
                   t == cfg.max_iters;
  if (!due) return;
  DiagnosticRecord d;
  d.t = t;
  d.f_value = oracle.value ? oracle.value(x, y) : kNaN;
  d.grad_evals = trace.grad_evals;
  if (cfg.diagnostic_metric) {
    d.metric = cfg.diagnostic_metric(t, x, y);
    if (std::isfinite(cfg.stop_metric_below) && d.metric <= cfg.stop_metric_below)
      stop = true;
  }
  trace.diagnostics.push_back(std::move(d));
}

// Shared loop for ttgda (minibatch == 0) and ttsgda (minibatch == batch_M).
RunTrace two_timescale_loop(const MinimaxOracle& oracle,
                            const ConstraintSet& set, const SolverConfig& cfg,
                            const Vec& x0, const Vec& y0, long minibatch) {
  if (static_cast<int>(x0.size()) != oracle.dim_x ||
      static_cast<int>(y0.size()) != oracle.dim_y)
    throw std::invalid_argument("solver: initial point dimension mismatch");
  if (!set.contains(y0, 1e-7))
    throw std::invalid_argument("solver: y0 must lie in the constraint set");
  if (cfg.max_iters < 0)
    throw std::invalid_argument("solver: max_iters must be >= 0");
  if (minibatch > 0 && !oracle.has_stochastic())
    throw std::invalid_argument("solver: oracle has no stochastic sampler");

  RunTrace trace;
  trace.metric_name = cfg.metric_name;
  trace.inner_tol = cfg.inner_tol;

  const RngState root = RngState::seeded(cfg.seed);
  SelectionState select{root.substream(kSelectStream)};
  Retention retain{cfg.retain_max, root.substream(3)};

  IterateState state{0, x0, y0, root.substream(kSampleStream)};
  retain.offer(trace.records, {0, state.x, state.y, cfg.schedule.eta_x(0),
                               cfg.schedule.eta_y(0)});
  select.offer(0, state.x);
  bool stop = false;
  maybe_diagnose(trace, cfg, 0, state.x, state.y, oracle, stop);

  while (state.t < cfg.max_iters && !stop) {
    ++state.t;
    GradPair g;
    if (minibatch > 0) {
      g = sg_minibatch(oracle, minibatch, state.x, state.y, state.rng);
      trace.oracle_calls += minibatch;
      trace.grad_evals += 2 * minibatch;
    } else {
      g = oracle.subgrad(state.x, state.y);
      trace.oracle_calls += 1;
      trace.grad_evals += 2;
    }
    const long t = state.t;
    state.x = state.x - cfg.schedule.eta_x(t - 1) * g.gx;
    state.y = set.project(state.y + cfg.schedule.eta_y(t - 1) * g.gy);
    if (!finite(state.x) || !finite(state.y) || state.x.norm() > kDivergenceNorm) {
      trace.status = RunStatus::Diverged;
      trace.failure_t = t;
      break;
    }
    retain.offer(trace.records, {t, state.x, state.y, cfg.schedule.eta_x(t),
                                 cfg.schedule.eta_y(t)});
    select.offer(t, state.x);
    maybe_diagnose(trace, cfg, t, state.x, state.y, oracle, stop);
  }
  trace.total_iters = state.t;
  trace.selected_index = select.index;
  trace.selected_x = select.x;
  return trace;
}

}  // namespace

RunTrace ttgda_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                   const SolverConfig& config, const Vec& x0, const Vec& y0) {
  return two_timescale_loop(oracle, set, config, x0, y0, 0);
}

GradPair sg_minibatch(const MinimaxOracle& oracle, long M, const Vec& x,
                      const Vec& y, RngState& rng) {
  if (!oracle.has_stochastic())
    throw std::invalid_argument("sg_minibatch: oracle has no stochastic sampler");
  if (M < 1) throw std::invalid_argument("sg_minibatch: M must be >= 1");
  GradPair acc{Vec::Zero(oracle.dim_x), Vec::Zero(oracle.dim_y)};
  for (long i = 0; i < M; ++i) {
    GradPair g = oracle.stochastic_sample(x, y, rng);
    acc.gx += g.gx;
    acc.gy += g.gy;
  }
  const double inv = 1.0 / static_cast<double>(M);
  acc.gx *= inv;
  acc.gy *= inv;
  return acc;
}

RunTrace ttsgda_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                    const SolverConfig& config, const Vec& x0, const Vec& y0) {
  return two_timescale_loop(oracle, set, config, x0, y0,
                            std::max<long>(1, config.schedule.batch_M));
}

Vec projected_gradient_ascent(const MinimaxOracle& oracle,
                              const ConstraintSet& set, const Vec& x, Vec y,
                              long steps, double eta) {
  for (long k = 0; k < steps; ++k) {
    const GradPair g = oracle.subgrad(x, y);
    y = set.project(y + eta * g.gy);
  }
  return y;
}

SaddleResult extragradient_saddle(const MinimaxOracle& oracle,
                                  const ConstraintSet& set, const Vec& anchor,
                                  double reg, double eta, long steps,
                                  double stop_residual, std::optional<Vec> x0,
                                  std::optional<Vec> y0) {
  if (reg < 0.0) throw std::invalid_argument("extragradient_saddle: reg must be >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("extragradient_saddle: eta must be > 0");
  SaddleResult out;
  Vec x = x0 ? *x0 : anchor;
  Vec y = y0 ? set.project(*y0) : set.center();
  const double ell = oracle.profile.smooth_ell > 0.0 ? oracle.profile.smooth_ell : 1.0;
  for (long k = 0; k < steps; ++k) {
    const GradPair g = oracle.subgrad(x, y);
    const Vec xt = x - eta * (g.gx + 2.0 * reg * (x - anchor));
    const Vec yt = set.project(y + eta * g.gy);
    const GradPair gt = oracle.subgrad(xt, yt);
    x = x - eta * (gt.gx + 2.0 * reg * (xt - anchor));
    y = set.project(y + eta * gt.gy);
    out.grad_evals += 4;
    out.iterations = k + 1;
    if (!finite(x) || !finite(y) || x.norm() > kDivergenceNorm) {
      out.status = RunStatus::Diverged;
      break;
    }
    // residual of the regularized saddle at the extrapolated point
    const double rx = (gt.gx + 2.0 * reg * (xt - anchor)).norm();
    const Vec yplus = set.project(yt + (1.0 / ell) * gt.gy);
    const double ry = ell * (yplus - yt).norm();
    out.residual = std::max(rx, ry);
    if (stop_residual > 0.0 && out.residual <= stop_residual) {
      out.converged = true;
      x = xt;  // the measured certificate belongs to the extrapolated pair
      y = yt;
      break;
    }
  }
  out.x = x;
  out.y = y;
  return out;
}

RunTrace gdmax_run(const MinimaxOracle& oracle, const ConstraintSet& set,
                   const SolverConfig& config, long inner_steps, const Vec& x0,
                   const Vec& y0) {
  if (static_cast<int>(x0.size()) != oracle.dim_x ||
      static_cast<int>(y0.size()) != oracle.dim_y)
    throw std::invalid_argument("gdmax: initial point dimension mismatch");
  if (!set.contains(y0, 1e-7))
    throw std::invalid_argument("gdmax: y0 must lie in the constraint set");
  if (inner_steps < 0)
    throw std::invalid_argument("gdmax: inner_steps must be >= 0");

  RunTrace trace;
  trace.metric_name = config.metric_name;
  trace.inner_tol = config.inner_tol;
  const RngState root = RngState::seeded(config.seed);
  SelectionState select{root.substream(kSelectStream)};
  Retention retain{config.retain_max, root.substream(3)};

  Vec x = x0, y = y0;
  retain.offer(trace.records,
               {0, x, y, config.schedule.eta_x(0), config.schedule.eta_y(0)});
  select.offer(0, x);
  bool stop = false;
  maybe_diagnose(trace, config, 0, x, y, oracle, stop);

  long t = 0;
  while (t < config.max_iters && !stop) {
    ++t;
    const double ey = config.schedule.eta_y(t - 1);
    for (long k = 0; k < inner_steps; ++k) {
      const GradPair g = oracle.subgrad(x, y);
      y = set.project(y + ey * g.gy);
      trace.oracle_calls += 1;
      trace.grad_evals += 2;
    }
    const GradPair g = oracle.subgrad(x, y);
    trace.oracle_calls += 1;
    trace.grad_evals += 2;
    x = x - config.schedule.eta_x(t - 1) * g.gx;
    if (!finite(x) || !finite(y) || x.norm() > kDivergenceNorm) {
      trace.status = RunStatus::Diverged;
      trace.failure_t = t;
      break;
    }
    retain.offer(trace.records,
                 {t, x, y, config.schedule.eta_x(t), config.schedule.eta_y(t)});
    select.offer(t, x);
    maybe_diagnose(trace, config, t, x, y, oracle, stop);
  }
  trace.total_iters = t;
  trace.selected_index = select.index;
  trace.selected_x = select.x;
  return trace;
}

}  // namespace ttgda
