#include "test_support.hpp"
#include "ttgda/solvers.hpp"

using namespace ttgda;

namespace {

bool traces_equal(const RunTrace& a, const RunTrace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].x != b.records[i].x) return false;
    if (a.records[i].y != b.records[i].y) return false;
  }
  return a.selected_index == b.selected_index;
}

}  // namespace

TEST_CASE("one descent-ascent step by hand") {
  Problem p = test::bilinear01();
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.1, 0.5);
  cfg.max_iters = 1;
  const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 1.0),
                               Vec::Constant(1, 0.5));
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[1].x[0] == doctest::Approx(0.95));
  CHECK(t.records[1].y[0] == doctest::Approx(1.0));
}

TEST_CASE("zero stepsizes freeze the iterates") {
  Problem p = test::bilinear01();
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.0, 0.0);
  cfg.max_iters = 20;
  const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 0.3),
                               Vec::Constant(1, -0.4));
  for (const auto& r : t.records) {
    CHECK(r.x[0] == 0.3);
    CHECK(r.y[0] == -0.4);
  }
}

TEST_CASE("ttgda drives grad Phi below 1e-2 on the scalar quadratic") {
  Problem p = test::scalar_quadratic();
  SolverConfig cfg;
  cfg.schedule = schedule_smooth_ncsc(p.oracle.profile, false, kNaN);
  cfg.max_iters = 5000;
  const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 2.0),
                               Vec::Zero(1));
  double min_grad = 1e300, first_grad = p.grad_phi_ref(t.records[0].x).norm();
  for (const auto& r : t.records)
    min_grad = std::min(min_grad, p.grad_phi_ref(r.x).norm());
  CHECK(min_grad <= 1e-2);
  CHECK(min_grad < first_grad);
}

TEST_CASE("sg_minibatch zero-noise equals subgrad") {
  Problem p = test::scalar_quadratic();
  MinimaxOracle noisy = with_gaussian_noise(p.oracle, 0.0);
  RngState rng = RngState::seeded(4);
  const Vec x = Vec::Constant(1, 1.3), y = Vec::Constant(1, -0.2);
  const GradPair exact = p.oracle.subgrad(x, y);
  for (long M : {1L, 5L}) {
    const GradPair g = sg_minibatch(noisy, M, x, y, rng);
    CHECK(g.gx == exact.gx);
    CHECK(g.gy == exact.gy);
  }
}

TEST_CASE("sg_minibatch mean and variance track sigma^2/M") {
  Problem p = test::bilinear01();
  MinimaxOracle noisy = with_gaussian_noise(p.oracle, 1.0);
  RngState rng = RngState::seeded(12);
  const Vec x = Vec::Constant(1, 0.4), y = Vec::Constant(1, 0.7);
  const GradPair exact = p.oracle.subgrad(x, y);
  const long M = 4;
  const int draws = 10000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const GradPair g = sg_minibatch(noisy, M, x, y, rng);
    const double v = g.gx[0];
    mean += v;
    m2 += v * v;
  }
  mean /= draws;
  const double var = m2 / draws - mean * mean;
  // variance bound sigma^2/M with CLT slack
  CHECK(var <= 0.25 * (1.0 + 5.0 / std::sqrt(static_cast<double>(draws))));
  CHECK(std::abs(mean - exact.gx[0]) <=
        4.0 * 1.0 / std::sqrt(static_cast<double>(M * draws)));
}

TEST_CASE("ttsgda with zero noise reproduces ttgda exactly") {
  Problem p = test::scalar_quadratic();
  MinimaxOracle noisy = with_gaussian_noise(p.oracle, 0.0);
  SolverConfig cfg;
  cfg.schedule = schedule_smooth_ncsc(p.oracle.profile, false, kNaN);
  cfg.max_iters = 200;
  cfg.seed = 9;
  const RunTrace det = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 2.0), Vec::Zero(1));
  const RunTrace sto = ttsgda_run(noisy, p.set, cfg, Vec::Constant(1, 2.0), Vec::Zero(1));
  CHECK(traces_equal(det, sto));
}

TEST_CASE("identical seeds give identical traces") {
  Problem p = test::scalar_quadratic();
  MinimaxOracle noisy = with_gaussian_noise(p.oracle, 0.5);
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.01, 0.1, 3);
  cfg.max_iters = 100;
  cfg.seed = 123;
  const RunTrace a = ttsgda_run(noisy, p.set, cfg, Vec::Constant(1, 1.0), Vec::Zero(1));
  const RunTrace b = ttsgda_run(noisy, p.set, cfg, Vec::Constant(1, 1.0), Vec::Zero(1));
  CHECK(traces_equal(a, b));
  cfg.seed = 124;
  const RunTrace c = ttsgda_run(noisy, p.set, cfg, Vec::Constant(1, 1.0), Vec::Zero(1));
  CHECK(!traces_equal(a, c));
}

TEST_CASE("x-hat is drawn uniformly from the trace") {
  Problem p = test::bilinear01();
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.0, 0.0);
  cfg.max_iters = 9;
  std::vector<long> counts(10, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    cfg.seed = seed;
    const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Zero(1), Vec::Zero(1));
    REQUIRE(t.selected_index >= 0);
    REQUIRE(t.selected_index <= 9);
    ++counts[t.selected_index];
  }
  for (long c : counts) {
    CHECK(c > 120);  // expected 200 per slot
    CHECK(c < 280);
  }
}

TEST_CASE("projected gradient ascent") {
  SUBCASE("stationary start is a fixed point") {
    Mat Q(1, 1), C(1, 1);
    Q << -1.0;
    C << 0.0;
    // f(x, y) = -0.5 x^2 - 0.5 (y - 0)^2 shifted: use f = x*0 - 0.5 (y-c)^2
    MinimaxOracle o;
    o.dim_x = 1;
    o.dim_y = 1;
    const double c = 0.3;
    o.value = [c](const Vec&, const Vec& y) { return -0.5 * (y[0] - c) * (y[0] - c); };
    o.subgrad = [c](const Vec&, const Vec& y) {
      return GradPair{Vec::Zero(1), Vec::Constant(1, -(y[0] - c))};
    };
    const auto box = ConstraintSet::box(Vec::Constant(1, -2.0), Vec::Constant(1, 2.0));
    const Vec y = projected_gradient_ascent(o, box, Vec::Zero(1),
                                            Vec::Constant(1, c), 25, 1.0);
    CHECK(y[0] == c);
  }

  SUBCASE("single hand-checked step") {
    MinimaxOracle o;
    o.dim_x = 1;
    o.dim_y = 1;
    o.value = [](const Vec&, const Vec& y) { return -0.5 * y[0] * y[0]; };
    o.subgrad = [](const Vec&, const Vec& y) {
      return GradPair{Vec::Zero(1), Vec::Constant(1, -y[0])};
    };
    const auto box = ConstraintSet::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0));
    const Vec y = projected_gradient_ascent(o, box, Vec::Zero(1),
                                            Vec::Constant(1, 1.0), 1, 1.0);
    CHECK(y[0] == 0.0);
  }

  SUBCASE("kappa contraction on a strongly concave quadratic") {
    RngState rng = RngState::seeded(31);
    Mat A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = rng.normal();
    const Mat M = A * A.transpose() + 0.5 * Mat::Identity(3, 3);
    const Vec a = rng.gaussian(3);
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    const double ell = es.eigenvalues().maxCoeff();
    const double mu = es.eigenvalues().minCoeff();
    const double kappa = ell / mu;
    const Vec y_star = M.ldlt().solve(a);

    MinimaxOracle o;
    o.dim_x = 1;
    o.dim_y = 3;
    o.value = [a, M](const Vec&, const Vec& y) {
      return a.dot(y) - 0.5 * y.dot(M * y);
    };
    o.subgrad = [a, M](const Vec&, const Vec& y) {
      return GradPair{Vec::Zero(1), a - M * y};
    };
    const auto box = ConstraintSet::box(Vec::Constant(3, -50.0), Vec::Constant(3, 50.0));

    Vec y = Vec::Zero(3);
    double prev = (y - y_star).squaredNorm();
    for (int k = 1; k <= 40; ++k) {
      y = projected_gradient_ascent(o, box, Vec::Zero(1), y, 1, 1.0 / ell);
      const double cur = (y - y_star).squaredNorm();
      CHECK(cur <= (1.0 - 1.0 / kappa) * prev * (1.0 + 1e-9) + 1e-300);
      prev = cur;
    }
    CHECK(prev <= std::pow(1.0 - 1.0 / kappa, 40) * y_star.squaredNorm() * (1 + 1e-6));
  }
}

TEST_CASE("extragradient on the anchored saddle") {
  Problem p = test::bilinear01();

  SUBCASE("regularized bilinear converges to the saddle") {
    const SaddleResult r = extragradient_saddle(p.oracle, p.set, Vec::Zero(1),
                                                1.0, 0.2, 10000, 1e-4,
                                                Vec::Constant(1, 1.0),
                                                Vec::Constant(1, 0.5));
    CHECK(r.converged);
    CHECK(std::abs(r.x[0]) < 1e-3);
    CHECK(std::abs(r.y[0]) < 1e-3);
    CHECK(r.residual <= 1e-4);
  }

  SUBCASE("pure proximal pull with a zero objective") {
    MinimaxOracle zero;
    zero.dim_x = 1;
    zero.dim_y = 1;
    zero.value = [](const Vec&, const Vec&) { return 0.0; };
    zero.subgrad = [](const Vec&, const Vec&) {
      return GradPair{Vec::Zero(1), Vec::Zero(1)};
    };
    const auto box = ConstraintSet::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0));
    const SaddleResult r = extragradient_saddle(zero, box, Vec::Constant(1, 3.0),
                                                1.0, 0.1, 5000, 1e-8,
                                                Vec::Zero(1));
    CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-6));
  }

  SUBCASE("single-timescale descent ascent cycles on the unregularized game") {
    // the classical negative control: equal stepsizes spiral away from the
    // bilinear saddle while the anchored extragradient solve above converges
    SolverConfig cfg;
    cfg.schedule = schedule_custom(0.2, 0.2);
    cfg.max_iters = 400;
    const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 0.5),
                                 Vec::Constant(1, 0.5));
    double min_norm = 1e300;
    for (const auto& r : t.records)
      min_norm = std::min(min_norm, std::hypot(r.x[0], r.y[0]));
    CHECK(min_norm > 0.3);  // never approaches (0, 0)
    const double last = std::hypot(t.records.back().x[0], t.records.back().y[0]);
    CHECK(last >= std::hypot(0.5, 0.5) * 0.9);
  }
}

TEST_CASE("gdmax") {
  Problem p = test::scalar_quadratic();

  SUBCASE("large inner budget matches exact descent on Phi") {
    SolverConfig cfg;
    cfg.schedule = schedule_smooth_ncsc(p.oracle.profile, false, kNaN);
    cfg.max_iters = 50;
    const RunTrace t = gdmax_run(p.oracle, p.set, cfg, 200, Vec::Constant(1, 2.0),
                                 Vec::Constant(1, 2.0));
    // reference: x_{k+1} = x_k - eta_x * grad Phi(x_k), starting after the
    // first inner solve has locked y onto y*(x)
    double x = 2.0;
    const double eta = cfg.schedule.eta_x_const;
    for (long k = 0; k < cfg.max_iters; ++k) x = x - eta * 0.5 * x;
    CHECK(t.records.back().x[0] == doctest::Approx(x).epsilon(1e-6));
  }

  SUBCASE("zero inner steps reduce to descent at frozen y") {
    SolverConfig cfg;
    cfg.schedule = schedule_custom(0.1, 0.1);
    cfg.max_iters = 10;
    const Vec y0 = Vec::Constant(1, 0.5);
    const RunTrace t = gdmax_run(p.oracle, p.set, cfg, 0, Vec::Constant(1, 1.0), y0);
    for (const auto& r : t.records) CHECK(r.y[0] == 0.5);
    // x_{t+1} = x_t - 0.1 * (Q x_t + C y0)
    double x = 1.0;
    for (int k = 0; k < 10; ++k) x = x - 0.1 * (-0.5 * x + 0.5);
    CHECK(t.records.back().x[0] == doctest::Approx(x));
  }
}

TEST_CASE("every trace iterate stays feasible") {
  Problem lr = make_robust_logreg(synthetic_blobs(20, 3, 1.0, 5), 1.0 / 400.0,
                                  1e-2, 10.0);
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.05, 0.5);
  cfg.max_iters = 300;
  const RunTrace t = ttgda_run(lr.oracle, lr.set, cfg, lr.default_x0, lr.default_y0);
  for (const auto& r : t.records) CHECK(lr.set.contains(r.y, 1e-9));

  Problem q = test::scalar_quadratic();
  SolverConfig cfg2;
  cfg2.schedule = schedule_custom(0.05, 0.9);
  cfg2.max_iters = 200;
  const RunTrace t2 = ttgda_run(q.oracle, q.set, cfg2, Vec::Constant(1, 8.0), Vec::Zero(1));
  for (const auto& r : t2.records) CHECK(q.set.contains(r.y, 1e-9));
}

TEST_CASE("divergence is detected and reported with the offending t") {
  // descent on a concave-in-x objective blows up with a huge stepsize
  MinimaxOracle o;
  o.dim_x = 1;
  o.dim_y = 1;
  o.value = [](const Vec& x, const Vec&) { return -x[0] * x[0]; };
  o.subgrad = [](const Vec& x, const Vec&) {
    return GradPair{Vec::Constant(1, -2.0 * x[0]), Vec::Zero(1)};
  };
  const auto box = ConstraintSet::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0));
  SolverConfig cfg;
  cfg.schedule = schedule_custom(10.0, 10.0);
  cfg.max_iters = 200;
  const RunTrace t = ttgda_run(o, box, cfg, Vec::Constant(1, 1.0), Vec::Zero(1));
  CHECK(t.status == RunStatus::Diverged);
  CHECK(t.failure_t > 0);
  CHECK(t.total_iters == t.failure_t);
}

TEST_CASE("reservoir retention keeps the trace bounded") {
  Problem p = test::scalar_quadratic();
  SolverConfig cfg;
  cfg.schedule = schedule_custom(0.001, 0.01);
  cfg.max_iters = 5000;
  cfg.retain_max = 64;
  cfg.seed = 3;
  const RunTrace t = ttgda_run(p.oracle, p.set, cfg, Vec::Constant(1, 1.0), Vec::Zero(1));
  CHECK(t.records.size() == 64);
  CHECK(t.total_iters == 5000);
  CHECK(t.selected_index >= 0);
  CHECK(t.selected_index <= 5000);
}
