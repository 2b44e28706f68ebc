#include "ttgda/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttgda {

namespace {

long geometric_budget(double kappa, double ell, double D, double tol) {
  const double target = std::max(2.0 * ell * std::max(D, 1.0) / tol, 2.0);
  return std::max<long>(64, static_cast<long>(4.0 * kappa * std::log(target)) + 16);
}

long sublinear_budget(double ell, double D, double tol) {
  const double q = ell * std::max(D, 1.0) / tol;
  const double b = 16.0 * q * q;
  return std::min<long>(static_cast<long>(2e6), std::max<long>(256, static_cast<long>(b)));
}

}  // namespace

PhiEval eval_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                 const Vec& x, double tol, std::optional<Vec> y0,
                 long max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("eval_phi: tol must be > 0");
  const double ell = oracle.profile.smooth_ell;
  if (!(ell > 0.0))
    throw std::invalid_argument("eval_phi: oracle profile needs ell > 0");
  const double mu = oracle.profile.strong_concavity_mu;
  const double D = set.diameter();

  long budget = mu > 0.0 ? geometric_budget(oracle.profile.kappa, ell, D, tol)
                         : sublinear_budget(ell, D, tol);
  if (max_iters > 0) budget = max_iters;

  PhiEval out;
  Vec y = y0 ? set.project(*y0) : set.center();
  const double eta = 1.0 / ell;
  Vec y_avg = y;
  for (long k = 0; k < budget; ++k) {
    const GradPair g = oracle.subgrad(x, y);
    out.grad_evals += 2;
    const Vec y_next = set.project(y + eta * g.gy);
    out.residual = ell * (y_next - y).norm();
    y = y_next;
    ++out.iterations;
    y_avg += (y - y_avg) / static_cast<double>(out.iterations + 1);
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
  }
  out.y = y;
  out.value = oracle.value(x, y);
  if (mu == 0.0) {
    // merely concave: the ergodic average is the safeguarded value estimate;
    // keep whichever point scores higher
    const Vec y_bar = set.project(y_avg);
    const double v_bar = oracle.value(x, y_bar);
    if (v_bar > out.value) {
      out.value = v_bar;
      out.y = y_bar;
    }
  }
  return out;
}

GradPhiResult grad_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                       const Vec& x, double tol) {
  if (!(oracle.profile.strong_concavity_mu > 0.0))
    throw std::invalid_argument("grad_phi: requires mu > 0");
  const double kappa = oracle.profile.kappa;
  // residual r gives ||y - y*|| <= 2 kappa r / ell, so target tol/(2 kappa)
  PhiEval pe = eval_phi(oracle, set, x, tol / (2.0 * kappa));
  GradPhiResult out;
  out.grad = oracle.subgrad(x, pe.y).gx;
  out.grad_evals = pe.grad_evals + 2;
  out.tol = tol;
  out.converged = pe.converged;
  return out;
}

ProxResult prox_phi(const MinimaxOracle& oracle, const ConstraintSet& set,
                    const Vec& x, double rho_hat, double tol, long max_iters) {
  if (!(rho_hat > 0.0)) throw std::invalid_argument("prox_phi: rho_hat must be > 0");
  if (rho_hat < oracle.profile.weak_convexity_rho)
    throw std::invalid_argument(
        "prox_phi: rho_hat below the weak-convexity modulus");
  if (!(tol > 0.0)) throw std::invalid_argument("prox_phi: tol must be > 0");
  const double ell = std::max(oracle.profile.smooth_ell, 0.0);
  const double eta = 1.0 / (2.0 * (ell + 2.0 * rho_hat));
  long budget = max_iters > 0 ? max_iters : 400000;

  SaddleResult sad =
      extragradient_saddle(oracle, set, x, rho_hat, eta, budget, tol);
  ProxResult out;
  out.prox_point = sad.x;
  out.y = sad.y;
  out.certificate_gap = sad.residual;
  out.iterations = sad.iterations;
  out.grad_evals = sad.grad_evals;
  out.converged = sad.converged;
  out.envelope_value = oracle.value(sad.x, sad.y) +
                       rho_hat * (sad.x - x).squaredNorm();
  return out;
}

double moreau_grad_norm(const MinimaxOracle& oracle, const ConstraintSet& set,
                        const Vec& x, double rho_hat, double tol,
                        ProxResult* detail) {
  ProxResult pr = prox_phi(oracle, set, x, rho_hat, tol);
  const double norm = 2.0 * rho_hat * (x - pr.prox_point).norm();
  if (detail) *detail = std::move(pr);
  return norm;
}

FStationarity f_stationarity(const MinimaxOracle& oracle,
                             const ConstraintSet& set, const Vec& x,
                             const Vec& y) {
  const double ell = oracle.profile.smooth_ell;
  if (!(ell > 0.0))
    throw std::invalid_argument("f_stationarity: oracle profile needs ell > 0");
  const GradPair g = oracle.subgrad(x, y);
  FStationarity out;
  out.y_plus = set.project(y + (1.0 / ell) * g.gy);
  out.grad_mapping_norm = ell * (out.y_plus - y).norm();
  out.f_grad_x_norm = oracle.subgrad(x, out.y_plus).gx.norm();
  return out;
}

TranslationResult translate_phi_to_f(const MinimaxOracle& oracle,
                                     const ConstraintSet& set,
                                     const Vec& x_hat, double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("translate_phi_to_f: eps must be > 0");
  const double ell = oracle.profile.smooth_ell;
  const double mu = oracle.profile.strong_concavity_mu;
  if (!(ell > 0.0))
    throw std::invalid_argument("translate_phi_to_f: oracle profile needs ell > 0");

  TranslationResult out;
  if (mu > 0.0) {
    const double kappa = oracle.profile.kappa;
    // stop once ell*||y+ - y|| <= eps/(2 kappa); then the pair is
    // eps-stationary in the one-step-ascent sense with x-residual <= 2 eps
    PhiEval pe = eval_phi(oracle, set, x_hat, eps / (2.0 * kappa));
    out.grad_evals = pe.grad_evals;
    out.x = x_hat;
    out.y = pe.y;
    const FStationarity fs = f_stationarity(oracle, set, x_hat, pe.y);
    out.grad_evals += 4;
    out.f_grad_x_norm = fs.f_grad_x_norm;
    out.grad_mapping_norm = fs.grad_mapping_norm;
    if (out.f_grad_x_norm > 2.0 * eps + 1e-9) {
      out.certified = false;
      out.warning = "x-residual exceeds 2*eps; was x_hat eps-stationary?";
    }
  } else {
    const double eta = 1.0 / (6.0 * ell);
    SaddleResult sad = extragradient_saddle(oracle, set, x_hat, ell, eta,
                                            1000000, eps / 2.0);
    out.grad_evals = sad.grad_evals;
    out.x = sad.x;
    out.y = sad.y;
    const FStationarity fs = f_stationarity(oracle, set, sad.x, sad.y);
    out.grad_evals += 4;
    out.f_grad_x_norm = fs.f_grad_x_norm;
    out.grad_mapping_norm = fs.grad_mapping_norm;
    if (!sad.converged) {
      out.certified = false;
      out.warning = "anchored saddle solve did not reach the residual target";
    } else if (out.f_grad_x_norm > 4.0 * eps + 1e-9) {
      out.certified = false;
      out.warning = "x-residual exceeds 4*eps; was x_hat eps-stationary?";
    }
  }
  return out;
}

StationarityReport stationarity_report(const MinimaxOracle& oracle,
                                       const ConstraintSet& set, const Vec& x,
                                       const Vec& y, double tol) {
  StationarityReport rep;
  rep.inner_tol = tol;
  const double mu = oracle.profile.strong_concavity_mu;
  const double ell = oracle.profile.smooth_ell;
  const double rho = oracle.profile.weak_convexity_rho;

  PhiEval pe = eval_phi(oracle, set, x, tol);
  rep.phi_value = pe.value;
  rep.inner_iters = pe.iterations;
  if (mu > 0.0) {
    rep.grad_phi_norm = oracle.subgrad(x, pe.y).gx.norm();
  }
  rep.envelope_rho_hat = rho > 0.0 ? rho : ell;
  if (rep.envelope_rho_hat > 0.0) {
    rep.moreau_grad_norm =
        moreau_grad_norm(oracle, set, x, rep.envelope_rho_hat, tol);
  }
  const FStationarity fs = f_stationarity(oracle, set, x, y);
  rep.f_grad_x_norm = fs.f_grad_x_norm;
  rep.grad_mapping_norm = fs.grad_mapping_norm;
  return rep;
}

}  // namespace ttgda
