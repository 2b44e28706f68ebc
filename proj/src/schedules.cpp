#include "ttgda/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace ttgda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// The two-timescale condition eta_x <= eta_y is implied by each rule for any
// admissible profile; assert it at construction so a bad profile fails loudly.
void assert_two_timescale(const StepsizeSchedule& s) {
  double eta_y_min = s.eta_y_const;
  if (s.block_B > 0) eta_y_min = 1.0 / (s.epoch_mu * static_cast<double>(s.block_B));
  if (s.eta_x_const > eta_y_min * (1.0 + 1e-12))
    throw std::runtime_error("schedule: eta_x exceeds min_t eta_y for this profile");
}

}  // namespace

double StepsizeSchedule::eta_x(long) const { return eta_x_const; }

double StepsizeSchedule::eta_y(long t) const {
  if (block_B <= 0) return eta_y_const;
  const long tt = t < 1 ? 1 : t;  // the epoch rule starts at t = 1
  const long r = (tt - 1) % block_B + 1;
  return 1.0 / (epoch_mu * static_cast<double>(r));
}

StepsizeSchedule schedule_smooth_ncsc(const RegularityProfile& p,
                                      bool stochastic, double eps) {
  require(p.strong_concavity_mu > 0.0, "schedule_smooth_ncsc: mu>0 required");
  require(p.smooth_ell > 0.0, "schedule_smooth_ncsc: ell>0 required");
  const double kappa = p.kappa;
  StepsizeSchedule s;
  s.regime = Regime::SmoothNcsc;
  s.eta_x_const = 1.0 / (16.0 * (kappa + 1.0) * (kappa + 1.0) * p.smooth_ell);
  s.eta_y_const = 1.0 / p.smooth_ell;
  s.target_eps = eps;
  s.batch_M = 1;
  if (stochastic && p.noise_var_sigma2 > 0.0) {
    require(eps > 0.0, "schedule_smooth_ncsc: eps>0 required for the batch rule");
    const double m = 48.0 * kappa * p.noise_var_sigma2 / (eps * eps);
    s.batch_M = std::max<long>(1, static_cast<long>(std::ceil(m)));
  }
  assert_two_timescale(s);
  return s;
}

StepsizeSchedule schedule_smooth_ncc(const RegularityProfile& p,
                                     bool stochastic, double eps) {
  require(p.smooth_ell > 0.0, "schedule_smooth_ncc: ell>0 required");
  require(p.lipschitz_L > 0.0, "schedule_smooth_ncc: L>0 required");
  require(p.diameter_D > 0.0, "schedule_smooth_ncc: D>0 required");
  require(eps > 0.0, "schedule_smooth_ncc: eps>0 required");
  const double ell = p.smooth_ell, L2 = p.lipschitz_L * p.lipschitz_L;
  const double D2 = p.diameter_D * p.diameter_D;
  const double e2 = eps * eps, e4 = e2 * e2, e6 = e4 * e2;
  const double s2 = p.noise_var_sigma2;
  StepsizeSchedule s;
  s.regime = Regime::SmoothNcc;
  s.target_eps = eps;
  s.batch_M = 1;
  if (!stochastic) {
    s.eta_x_const = std::min(e2 / (80.0 * ell * L2),
                             e4 / (4096.0 * ell * ell * ell * L2 * D2));
    s.eta_y_const = 1.0 / ell;
  } else {
    const double V = L2 + s2;
    const double ell3 = ell * ell * ell;
    const double t1 = e2 / (80.0 * ell * V);
    const double t2 = e4 / (8192.0 * ell3 * V * D2);
    const double t3 = s2 > 0.0 ? e6 / (131072.0 * ell3 * V * D2 * s2) : kInf;
    s.eta_x_const = std::min(t1, std::min(t2, t3));
    s.eta_y_const = std::min(1.0 / (2.0 * ell),
                             s2 > 0.0 ? e2 / (32.0 * ell * s2) : kInf);
  }
  assert_two_timescale(s);
  return s;
}

StepsizeSchedule schedule_nonsmooth_ncsc(const RegularityProfile& p,
                                         bool stochastic, double eps) {
  require(p.strong_concavity_mu > 0.0, "schedule_nonsmooth_ncsc: mu>0 required");
  require(p.weak_convexity_rho > 0.0, "schedule_nonsmooth_ncsc: rho>0 required");
  require(p.lipschitz_L > 0.0, "schedule_nonsmooth_ncsc: L>0 required");
  require(eps > 0.0, "schedule_nonsmooth_ncsc: eps>0 required");
  const double mu = p.strong_concavity_mu, rho = p.weak_convexity_rho;
  const double V = p.lipschitz_L * p.lipschitz_L +
                   (stochastic ? p.noise_var_sigma2 : 0.0);
  const double e2 = eps * eps, e4 = e2 * e2;
  const double rho2 = rho * rho, V2 = V * V;
  const double t1 = e2 / (48.0 * rho * V);
  const double t2 = mu * e4 / (4096.0 * rho2 * V2);
  const double logarg = 1.0 + 4096.0 * rho2 * V2 / (mu * mu * e4);
  const double lg = std::log(logarg);  // natural log
  const double t3 = mu * e4 / (4096.0 * rho2 * V2 * lg * lg);
  StepsizeSchedule s;
  s.regime = Regime::NonsmoothNcsc;
  s.eta_x_const = std::min(t1, std::min(t2, t3));
  s.epoch_mu = mu;
  s.block_B = static_cast<long>(std::floor(std::sqrt(1.0 / (mu * s.eta_x_const)))) + 1;
  s.eta_y_const = 1.0 / mu;  // eta_y(t) overrides via the epoch rule
  s.target_eps = eps;
  s.batch_M = 1;
  assert_two_timescale(s);
  return s;
}

StepsizeSchedule schedule_nonsmooth_ncc(const RegularityProfile& p,
                                        bool stochastic, double eps) {
  require(p.weak_convexity_rho > 0.0, "schedule_nonsmooth_ncc: rho>0 required");
  require(p.lipschitz_L > 0.0, "schedule_nonsmooth_ncc: L>0 required");
  require(p.diameter_D > 0.0, "schedule_nonsmooth_ncc: D>0 required");
  require(eps > 0.0, "schedule_nonsmooth_ncc: eps>0 required");
  const double rho = p.weak_convexity_rho;
  const double D2 = p.diameter_D * p.diameter_D;
  const double e2 = eps * eps, e6 = e2 * e2 * e2;
  StepsizeSchedule s;
  s.regime = Regime::NonsmoothNcc;
  s.target_eps = eps;
  s.batch_M = 1;
  if (!stochastic) {
    const double L2 = p.lipschitz_L * p.lipschitz_L;
    const double L4 = L2 * L2;
    s.eta_x_const = std::min(e2 / (48.0 * rho * L2),
                             e6 / (65536.0 * rho * rho * rho * L4 * D2));
    s.eta_y_const = e2 / (16.0 * rho * L2);
  } else {
    const double V = p.lipschitz_L * p.lipschitz_L + p.noise_var_sigma2;
    s.eta_x_const = std::min(e2 / (48.0 * rho * V),
                             e6 / (131072.0 * rho * rho * rho * V * V * D2));
    s.eta_y_const = e2 / (32.0 * rho * V);
  }
  assert_two_timescale(s);
  return s;
}

StepsizeSchedule schedule_custom(double eta_x, double eta_y, long batch_M) {
  require(eta_x >= 0.0 && eta_y >= 0.0, "schedule_custom: stepsizes must be >= 0");
  require(batch_M >= 1, "schedule_custom: batch_M must be >= 1");
  StepsizeSchedule s;
  s.regime = Regime::Custom;
  s.eta_x_const = eta_x;
  s.eta_y_const = eta_y;
  s.batch_M = batch_M;
  return s;
}

StepsizeSchedule schedule_for(Regime regime, const RegularityProfile& p,
                              bool stochastic, double eps) {
  switch (regime) {
    case Regime::SmoothNcsc: return schedule_smooth_ncsc(p, stochastic, eps);
    case Regime::SmoothNcc: return schedule_smooth_ncc(p, stochastic, eps);
    case Regime::NonsmoothNcsc: return schedule_nonsmooth_ncsc(p, stochastic, eps);
    case Regime::NonsmoothNcc: return schedule_nonsmooth_ncc(p, stochastic, eps);
    case Regime::Custom: break;
  }
  throw std::invalid_argument("schedule_for: custom regime needs explicit stepsizes");
}

}  // namespace ttgda
