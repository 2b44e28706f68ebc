#include "test_support.hpp"
#include "ttgda/schedules.hpp"

using namespace ttgda;

namespace {

RegularityProfile smooth_profile(double ell, double mu, double L = 1.0,
                                 double D = 1.0, double sigma2 = 0.0) {
  RegularityProfile p;
  p.smooth_ell = ell;
  p.strong_concavity_mu = mu;
  p.lipschitz_L = L;
  p.diameter_D = D;
  p.noise_var_sigma2 = sigma2;
  p.finalize_kappa();
  return p;
}

RegularityProfile nonsmooth_profile(double rho, double L, double mu = 0.0,
                                    double D = 1.0, double sigma2 = 0.0) {
  RegularityProfile p;
  p.weak_convexity_rho = rho;
  p.lipschitz_L = L;
  p.strong_concavity_mu = mu;
  p.diameter_D = D;
  p.noise_var_sigma2 = sigma2;
  return p;
}

}  // namespace

TEST_CASE("smooth-ncsc stepsizes") {
  auto s = schedule_smooth_ncsc(smooth_profile(1.0, 0.5), false, kNaN);
  CHECK(s.eta_x(0) == doctest::Approx(1.0 / 144.0).epsilon(1e-14));
  CHECK(s.eta_y(0) == 1.0);
  CHECK(s.batch_M == 1);

  s = schedule_smooth_ncsc(smooth_profile(1.0, 1.0), false, kNaN);
  CHECK(s.eta_x(0) == doctest::Approx(1.0 / 64.0).epsilon(1e-14));

  s = schedule_smooth_ncsc(smooth_profile(1.0, 0.5, 1.0, 1.0, 1.0), true, 1.0);
  CHECK(s.batch_M == 96);

  CHECK_THROWS_AS(schedule_smooth_ncsc(smooth_profile(1.0, 0.0), false, kNaN),
                  std::invalid_argument);
}

TEST_CASE("smooth-ncc stepsizes") {
  auto s = schedule_smooth_ncc(smooth_profile(1.0, 0.0), false, 0.1);
  CHECK(s.eta_x(0) == doctest::Approx(2.44140625e-8).epsilon(1e-12));
  CHECK(s.eta_y(0) == 1.0);

  s = schedule_smooth_ncc(smooth_profile(1.0, 0.0, 1.0, 1.0, 1.0), true, 0.1);
  CHECK(s.eta_y(0) == doctest::Approx(3.125e-4).epsilon(1e-12));

  // zero noise keeps the 8192 denominator term active
  s = schedule_smooth_ncc(smooth_profile(1.0, 0.0, 1.0, 1.0, 0.0), true, 0.1);
  CHECK(s.eta_x(0) == doctest::Approx(1.220703125e-8).epsilon(1e-12));
  CHECK(s.eta_y(0) == 0.5);
}

TEST_CASE("nonsmooth-ncsc stepsizes and epoch rule") {
  auto s = schedule_nonsmooth_ncsc(nonsmooth_profile(1.0, 1.0, 1.0), false, 1.0);
  // the log-squared term wins for these constants
  CHECK(s.eta_x(0) == doctest::Approx(3.528e-6).epsilon(5e-4));
  const double lg = std::log(1.0 + 4096.0);
  CHECK(s.eta_x(0) == doctest::Approx(1.0 / (4096.0 * lg * lg)).epsilon(1e-14));

  // epoch pattern for a hand-resolved eta_x
  StepsizeSchedule epoch;
  epoch.regime = Regime::NonsmoothNcsc;
  epoch.epoch_mu = 1.0;
  epoch.block_B = static_cast<long>(std::floor(std::sqrt(1.0 / (1.0 * 0.01)))) + 1;
  CHECK(epoch.block_B == 11);
  for (long t = 1; t <= 11; ++t)
    CHECK(epoch.eta_y(t) == doctest::Approx(1.0 / static_cast<double>(t)));
  CHECK(epoch.eta_y(12) == doctest::Approx(1.0));
  CHECK(epoch.eta_y(0) == epoch.eta_y(1));  // the rule starts at t = 1

  SUBCASE("periodicity") {
    for (long t = 1; t <= 5 * epoch.block_B; ++t)
      CHECK(epoch.eta_y(t + epoch.block_B) == epoch.eta_y(t));
  }

  SUBCASE("stochastic substitution L^2 -> L^2 + sigma^2") {
    auto det = schedule_nonsmooth_ncsc(nonsmooth_profile(0.8, 2.0, 1.0), false, 0.5);
    auto sto = schedule_nonsmooth_ncsc(nonsmooth_profile(0.8, 1.0, 1.0, 1.0, 3.0),
                                       true, 0.5);
    // L^2 = 4 in the deterministic run equals L^2 + sigma^2 = 4 in the
    // stochastic one, so every min term agrees
    CHECK(det.eta_x(0) == sto.eta_x(0));
    CHECK(det.block_B == sto.block_B);
  }

  CHECK_THROWS_AS(
      schedule_nonsmooth_ncsc(nonsmooth_profile(1.0, 1.0, 0.0), false, 1.0),
      std::invalid_argument);
}

TEST_CASE("nonsmooth-ncc stepsizes") {
  auto s = schedule_nonsmooth_ncc(nonsmooth_profile(1.0, 1.0), false, 0.2);
  CHECK(s.eta_y(0) == doctest::Approx(2.5e-3).epsilon(1e-12));
  CHECK(s.eta_x(0) == doctest::Approx(9.765625e-10).epsilon(1e-12));

  s = schedule_nonsmooth_ncc(nonsmooth_profile(1.0, 1.0, 0.0, 1.0, 1.0), true, 0.2);
  CHECK(s.eta_y(0) == doctest::Approx(6.25e-4).epsilon(1e-12));
}

TEST_CASE("two-timescale property eta_x <= eta_y over a long horizon") {
  RngState rng = RngState::seeded(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double ell = 0.5 + 2.5 * rng.uniform();
    const double mu = ell * (0.1 + 0.8 * rng.uniform());
    const double L = 0.5 + 2.5 * rng.uniform();
    const double rho = 0.5 + 2.5 * rng.uniform();
    const double D = 0.5 + 2.0 * rng.uniform();
    const double eps = 0.01 + 0.49 * rng.uniform();
    const bool stochastic = trial % 2 == 0;
    const double sigma2 = stochastic ? rng.uniform() : 0.0;

    RegularityProfile sp = smooth_profile(ell, mu, L, D, sigma2);
    RegularityProfile np = nonsmooth_profile(rho, L, mu, D, sigma2);
    np.strong_concavity_mu = std::min(mu, 1.0);

    const StepsizeSchedule all[] = {
        schedule_smooth_ncsc(sp, stochastic, eps),
        schedule_smooth_ncc(sp, stochastic, eps),
        schedule_nonsmooth_ncsc(np, stochastic, eps),
        schedule_nonsmooth_ncc(np, stochastic, eps),
    };
    for (const auto& s : all) {
      double min_ey = 1e300;
      // constant except the epoch rule, which repeats with period B
      const long horizon = s.block_B > 0 ? 2 * s.block_B + 2 : 3;
      for (long t = 0; t <= horizon; ++t) min_ey = std::min(min_ey, s.eta_y(t));
      CHECK(s.eta_x(0) <= min_ey * (1 + 1e-12));
      if (s.block_B > 0) {
        bool ok = true;
        for (long t = 1; t <= 1000000; t += 997)
          ok = ok && s.eta_y(t + s.block_B) == s.eta_y(t);
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("eta_x is monotone in eps") {
  const RegularityProfile sp = smooth_profile(2.0, 0.5, 1.5, 2.0, 0.5);
  const RegularityProfile np = nonsmooth_profile(1.5, 2.0, 0.7, 2.0, 0.5);
  double prev_ncc = 0.0, prev_nncsc = 0.0, prev_nncc = 0.0;
  for (double eps = 0.05; eps <= 0.8; eps += 0.05) {
    const double a = schedule_smooth_ncc(sp, true, eps).eta_x(0);
    const double b = schedule_nonsmooth_ncsc(np, true, eps).eta_x(0);
    const double c = schedule_nonsmooth_ncc(np, true, eps).eta_x(0);
    CHECK(a >= prev_ncc);
    CHECK(b >= prev_nncsc);
    CHECK(c >= prev_nncc);
    prev_ncc = a;
    prev_nncsc = b;
    prev_nncc = c;
  }
}

TEST_CASE("custom schedule carries user constants") {
  const auto s = schedule_custom(0.001, 0.1, 10);
  CHECK(s.eta_x(12345) == 0.001);
  CHECK(s.eta_y(12345) == 0.1);
  CHECK(s.batch_M == 10);
}
