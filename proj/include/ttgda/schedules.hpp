#pragma once

#include "ttgda/core.hpp"

namespace ttgda {

/// The per-iteration stepsize pair (eta_x^t, eta_y^t) plus minibatch size.
///
/// All built-in regimes use a constant eta_x. eta_y is constant except in
/// nonsmooth-ncsc, where it cycles through epochs of length block_B:
/// eta_y^t = 1/(mu * (t - j*B)) for t in epoch j, restarting every B steps.
struct StepsizeSchedule {
  Regime regime = Regime::Custom;
  double eta_x_const = 0.0;
  double eta_y_const = 0.0;
  double epoch_mu = 0.0;  // drives the cyclic rule when block_B > 0
  long block_B = 0;       // 0 = constant eta_y
  long batch_M = 1;
  double target_eps = kNaN;

  double eta_x(long t) const;
  double eta_y(long t) const;
};

/// eta_x = 1/(16 (kappa+1)^2 ell), eta_y = 1/ell; stochastic runs use batch
/// M = max{1, ceil(48 kappa sigma^2 / eps^2)}.
StepsizeSchedule schedule_smooth_ncsc(const RegularityProfile& p,
                                      bool stochastic, double eps);

/// Constant pair from the smooth merely-concave rate analysis; the
/// deterministic eta_x is a two-term min, the stochastic a three-term min
/// with eta_y = min{1/(2 ell), eps^2/(32 ell sigma^2)}.
StepsizeSchedule schedule_smooth_ncc(const RegularityProfile& p,
                                     bool stochastic, double eps);

/// Constant eta_x (three-term min; L^2 -> L^2 + sigma^2 when stochastic) with
/// the epoch-restarted eta_y^t = 1/(mu t) rule, B = floor(sqrt(1/(mu eta_x)))+1.
StepsizeSchedule schedule_nonsmooth_ncsc(const RegularityProfile& p,
                                         bool stochastic, double eps);

/// Constant pair for the weakly-convex merely-concave regime.
StepsizeSchedule schedule_nonsmooth_ncc(const RegularityProfile& p,
                                        bool stochastic, double eps);

/// User-supplied constant pair for ablations and sweeps.
StepsizeSchedule schedule_custom(double eta_x, double eta_y, long batch_M = 1);

StepsizeSchedule schedule_for(Regime regime, const RegularityProfile& p,
                              bool stochastic, double eps);

}  // namespace ttgda
