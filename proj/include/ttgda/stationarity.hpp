#pragma once

#include "ttgda/solvers.hpp"

namespace ttgda {

struct PhiEval {
  double value = kNaN;  // f(x, y) at the returned near-argmax
  Vec y;
  double residual = kNaN;  // ell * ||y+ - y|| at the stopping point
  long iterations = 0;
  long grad_evals = 0;
  bool converged = false;
};

/// Estimates Phi(x) = max_{y in Y} f(x, y) by projected gradient ascent at
/// frozen x, stopping once the gradient-mapping residual drops below tol.
/// Strongly concave problems get a geometric budget; merely concave ones a
/// budget scaling as 1/tol^2 (capped by max_iters when given).
PhiEval eval_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                 const Vec& x, double tol,
                 std::optional<Vec> y0 = std::nullopt, long max_iters = 0);

struct GradPhiResult {
  Vec grad;
  double tol = kNaN;
  long grad_evals = 0;
  bool converged = false;
};

/// grad Phi(x) = grad_x f(x, y*(x)) for strongly concave inner problems;
/// the returned estimate is within tol of the exact gradient.
GradPhiResult grad_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                       const Vec& x, double tol);

struct ProxResult {
  Vec prox_point;
  Vec y;                          // inner maximizer at the proximal point
  double certificate_gap = kNaN;  // residual of the anchored saddle solve
  double envelope_value = kNaN;   // Phi(prox) + rho_hat * ||prox - x||^2
  long iterations = 0;
  long grad_evals = 0;
  bool converged = false;
};

/// Proximal point argmin_w Phi(w) + rho_hat * ||w - x||^2, computed by
/// solving the anchored saddle problem with the extragradient iteration at
/// stepsize 1/(2(ell + 2 rho_hat)).
ProxResult prox_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                    const Vec& x, double rho_hat, double tol,
                    long max_iters = 0);

/// ||grad of the Moreau envelope|| = 2 * rho_hat * ||x - prox(x)||.
double moreau_grad_norm(const MinimaxOracle& oracle, const ConstraintSet& set,
                        const Vec& x, double rho_hat, double tol,
                        ProxResult* detail = nullptr);

struct FStationarity {
  double f_grad_x_norm = kNaN;     // ||grad_x f(x, y+)||
  double grad_mapping_norm = kNaN; // ell * ||y+ - y||
  Vec y_plus;
};

/// One-projection residual pair at (x, y) with y+ = P_Y(y + grad_y f / ell).
FStationarity f_stationarity(const MinimaxOracle& oracle,
                             const ConstraintSet& set, const Vec& x,
                             const Vec& y);

struct TranslationResult {
  Vec x;
  Vec y;
  double f_grad_x_norm = kNaN;
  double grad_mapping_norm = kNaN;
  long grad_evals = 0;
  bool certified = true;
  std::string warning;
};

/// Turns an eps-stationary point of Phi into a nearby pair with small
/// f-residuals: ascent at frozen x when mu > 0 (target 2*eps), an anchored
/// extragradient solve when mu = 0 (target 4*eps). A failed certification
/// precondition sets a warning instead of aborting.
TranslationResult translate_phi_to_f(const MinimaxOracle& oracle,
                                     const ConstraintSet& set,
                                     const Vec& x_hat, double eps);

struct StationarityReport {
  double phi_value = kNaN;
  double grad_phi_norm = kNaN;  // only when mu > 0
  double moreau_grad_norm = kNaN;
  double envelope_rho_hat = kNaN;  // 2*ell vs 2*rho envelope, recorded
  double f_grad_x_norm = kNaN;
  double grad_mapping_norm = kNaN;
  double inner_tol = kNaN;
  long inner_iters = 0;
};

StationarityReport stationarity_report(const MinimaxOracle& oracle,
                                       const ConstraintSet& set, const Vec& x,
                                       const Vec& y, double tol);

}  // namespace ttgda
