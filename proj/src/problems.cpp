#include "ttgda/problems.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace ttgda {

namespace {

double spectral_norm_sym(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

double min_eigenvalue_sym(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Mat joint_hessian(const Mat& Q, const Mat& C, double mu) {
  const long m = Q.rows(), n = C.cols();
  Mat H(m + n, m + n);
  H.topLeftCorner(m, m) = Q;
  H.topRightCorner(m, n) = C;
  H.bottomLeftCorner(n, m) = C.transpose();
  H.bottomRightCorner(n, n) = -mu * Mat::Identity(n, n);
  return H;
}

double sparse_dot(const std::vector<std::pair<int, double>>& row, const Vec& x) {
  double s = 0.0;
  for (const auto& [idx, val] : row) s += val * x[idx - 1];
  return s;
}

// log(1 + exp(z)) without overflow
double log1pexp(double z) {
  if (z > 35.0) return z;
  if (z < -35.0) return std::exp(z);
  return std::log1p(std::exp(z));
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct LogregParams {
  DatasetLibsvm data;
  double lambda1, lambda2, alpha;
};

double logreg_loss_i(const LogregParams& P, int i, const Vec& x) {
  const double margin = P.data.labels[i] * sparse_dot(P.data.rows[i], x);
  return log1pexp(-margin);
}

// d/dx of log(1+exp(-b a'x)) = -b * sigmoid(-b a'x) * a, scattered sparsely
void logreg_loss_grad_i(const LogregParams& P, int i, const Vec& x, double w,
                        Vec& out) {
  const double b = P.data.labels[i];
  const double margin = b * sparse_dot(P.data.rows[i], x);
  const double coef = -w * b * sigmoid(-margin);
  for (const auto& [idx, val] : P.data.rows[i]) out[idx - 1] += coef * val;
}

Vec logreg_penalty_grad(const LogregParams& P, const Vec& x) {
  Vec g(x.size());
  for (int j = 0; j < x.size(); ++j) {
    const double d = 1.0 + P.alpha * x[j] * x[j];
    g[j] = P.lambda2 * 2.0 * P.alpha * x[j] / (d * d);
  }
  return g;
}

double logreg_penalty(const LogregParams& P, const Vec& x) {
  double s = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    const double t = P.alpha * x[j] * x[j];
    s += t / (1.0 + t);
  }
  return P.lambda2 * s;
}

}  // namespace

DatasetLibsvm parse_libsvm(std::istream& in) {
  DatasetLibsvm data;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    double label;
    try {
      std::size_t used = 0;
      label = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::runtime_error("libsvm parse error at line " +
                               std::to_string(line_no) +
                               ": non-numeric label '" + tok + "'");
    }
    if (label == 0.0) label = -1.0;
    if (label != 1.0 && label != -1.0)
      throw std::runtime_error("libsvm parse error at line " +
                               std::to_string(line_no) +
                               ": label must be +1, -1 or 0/1");

    std::vector<std::pair<int, double>> row;
    int prev_idx = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("libsvm parse error at line " +
                                 std::to_string(line_no) +
                                 ": expected idx:val, got '" + tok + "'");
      int idx;
      double val;
      try {
        std::size_t u1 = 0, u2 = 0;
        idx = std::stoi(tok.substr(0, colon), &u1);
        const std::string vs = tok.substr(colon + 1);
        val = std::stod(vs, &u2);
        if (u1 != colon || u2 != vs.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::runtime_error("libsvm parse error at line " +
                                 std::to_string(line_no) +
                                 ": non-numeric token '" + tok + "'");
      }
      if (idx <= prev_idx)
        throw std::runtime_error("libsvm parse error at line " +
                                 std::to_string(line_no) +
                                 ": indices not increasing");
      prev_idx = idx;
      row.emplace_back(idx, val);
      data.num_features = std::max(data.num_features, idx);
    }
    data.labels.push_back(label);
    data.rows.push_back(std::move(row));
  }
  data.num_samples = static_cast<int>(data.labels.size());
  return data;
}

DatasetLibsvm parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_libsvm(in);
}

DatasetLibsvm synthetic_blobs(int num_samples, int num_features, double margin,
                              std::uint64_t seed) {
  if (num_samples < 1 || num_features < 1)
    throw std::invalid_argument("synthetic_blobs: need positive sizes");
  RngState rng = RngState::seeded(seed);
  DatasetLibsvm data;
  data.num_samples = num_samples;
  data.num_features = num_features;
  for (int i = 0; i < num_samples; ++i) {
    const double label = i % 2 == 0 ? 1.0 : -1.0;
    std::vector<std::pair<int, double>> row;
    row.reserve(num_features);
    for (int j = 1; j <= num_features; ++j)
      row.emplace_back(j, label * margin + rng.normal());
    data.labels.push_back(label);
    data.rows.push_back(std::move(row));
  }
  return data;
}

Problem make_bilinear(double scale, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_bilinear: radius must be > 0");
  const double c = scale, R = radius;
  Problem p;
  p.kind = "bilinear";
  p.set = ConstraintSet::box(Vec::Constant(1, -R), Vec::Constant(1, R));
  p.oracle.dim_x = 1;
  p.oracle.dim_y = 1;
  p.oracle.value = [c](const Vec& x, const Vec& y) { return c * x[0] * y[0]; };
  p.oracle.subgrad = [c](const Vec& x, const Vec& y) {
    return GradPair{Vec::Constant(1, c * y[0]), Vec::Constant(1, c * x[0])};
  };
  p.oracle.profile.lipschitz_L = std::abs(c) * R;
  p.oracle.profile.smooth_ell = std::abs(c);
  p.oracle.profile.diameter_D = 2.0 * R;
  p.oracle.profile.kappa = 1.0;
  p.phi_ref = [c, R](const Vec& x) { return std::abs(c) * R * std::abs(x[0]); };
  p.y_star_ref = [c, R](const Vec& x) {
    const double s = c * x[0];
    return Vec::Constant(1, s > 0.0 ? R : (s < 0.0 ? -R : 0.0));
  };
  p.phi_min = 0.0;
  p.default_x0 = Vec::Constant(1, 1.0);
  p.default_y0 = Vec::Zero(1);
  return p;
}

Problem make_quadratic_ncsc(const Mat& Q, const Mat& C, double mu,
                            double radius, double test_radius_x) {
  if (Q.rows() != Q.cols() || !Q.isApprox(Q.transpose(), 1e-12))
    throw std::invalid_argument("make_quadratic_ncsc: Q must be symmetric");
  if (Q.rows() != C.rows())
    throw std::invalid_argument("make_quadratic_ncsc: Q and C row mismatch");
  if (!(mu > 0.0)) throw std::invalid_argument("make_quadratic_ncsc: mu must be > 0");
  if (min_eigenvalue_sym(Q) >= 0.0)
    throw std::invalid_argument(
        "make_quadratic_ncsc: Q must have a negative eigenvalue");

  const int m = static_cast<int>(Q.rows()), n = static_cast<int>(C.cols());
  Problem p;
  p.kind = "quadratic-ncsc";
  p.set = ConstraintSet::ball(Vec::Zero(n), radius);
  p.test_radius_x = test_radius_x;
  p.oracle.dim_x = m;
  p.oracle.dim_y = n;
  p.oracle.value = [Q, C, mu](const Vec& x, const Vec& y) {
    return 0.5 * x.dot(Q * x) + x.dot(C * y) - 0.5 * mu * y.squaredNorm();
  };
  p.oracle.subgrad = [Q, C, mu](const Vec& x, const Vec& y) {
    return GradPair{Q * x + C * y, C.transpose() * x - mu * y};
  };

  const double ell = spectral_norm_sym(joint_hessian(Q, C, mu));
  auto& prof = p.oracle.profile;
  prof.smooth_ell = ell;
  prof.strong_concavity_mu = mu;
  prof.weak_convexity_rho = std::max(0.0, -min_eigenvalue_sym(Q));
  prof.diameter_D = 2.0 * radius;
  prof.lipschitz_L =
      spectral_norm_sym(Q) * test_radius_x + std::sqrt(spectral_norm_sym(C.transpose() * C)) * radius;
  prof.finalize_kappa();

  const Mat P = Q + C * C.transpose() / mu;  // Hessian of Phi on the interior
  const ConstraintSet ball = p.set;
  p.y_star_ref = [C, mu, ball](const Vec& x) {
    return ball.project(Vec(C.transpose() * x / mu));
  };
  p.phi_ref = [P, C, mu, radius, Q](const Vec& x) {
    const Vec u = C.transpose() * x;
    const double s = u.norm();
    if (s <= mu * radius) return 0.5 * x.dot(P * x);
    // boundary branch of the inner max
    return 0.5 * x.dot(Q * x) + radius * s - 0.5 * mu * radius * radius;
  };
  p.grad_phi_ref = [P, C, mu, radius, Q](const Vec& x) {
    const Vec u = C.transpose() * x;
    const double s = u.norm();
    if (s <= mu * radius) return Vec(P * x);
    return Vec(Q * x + radius * (C * u) / s);
  };
  if (min_eigenvalue_sym(P) >= -1e-12) p.phi_min = 0.0;
  p.default_x0 = Vec::Constant(m, 1.0);
  p.default_y0 = Vec::Zero(n);
  return p;
}

Problem make_quadratic_ncsc_demo(int dim_x, int dim_y, double kappa_target,
                                 std::uint64_t seed) {
  if (kappa_target < 1.5)
    throw std::invalid_argument("make_quadratic_ncsc_demo: kappa_target too small");
  RngState rng = RngState::seeded(seed);
  Mat C(dim_x, dim_y);
  for (int i = 0; i < dim_x; ++i)
    for (int j = 0; j < dim_y; ++j) C(i, j) = 0.5 * rng.normal();
  Mat A(dim_x, dim_x);
  for (int i = 0; i < dim_x; ++i)
    for (int j = 0; j < dim_x; ++j) A(i, j) = rng.normal();
  // P > 0 so Phi = 0.5 x'Px with minimum 0 at the origin
  Mat P = A * A.transpose() / dim_x + 0.3 * Mat::Identity(dim_x, dim_x);
  double mu = 1.0;
  Mat Q;
  for (int pass = 0; pass < 60; ++pass) {
    Q = P - C * C.transpose() / mu;
    if (min_eigenvalue_sym(Q) >= 0.0) {
      mu *= 0.7;  // strengthen the coupling until Q is indefinite
      continue;
    }
    const double ell = spectral_norm_sym(joint_hessian(Q, C, mu));
    const double kappa = ell / mu;
    if (std::abs(kappa - kappa_target) < 0.05 * kappa_target) break;
    mu *= kappa / kappa_target;
  }
  return make_quadratic_ncsc(Q, C, mu, 10.0, 10.0);
}

Problem make_robust_logreg(const DatasetLibsvm& data, double lambda1,
                           double lambda2, double alpha, double test_radius_x) {
  if (data.num_samples < 1)
    throw std::invalid_argument("make_robust_logreg: empty dataset");
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("make_robust_logreg: parameters must be positive");
  for (int i = 0; i < data.num_samples; ++i)
    if (data.labels[i] != 1.0 && data.labels[i] != -1.0)
      throw std::invalid_argument("make_robust_logreg: labels must be +-1");

  const int N = data.num_samples, d = data.num_features;
  auto P = std::make_shared<const LogregParams>(
      LogregParams{data, lambda1, lambda2, alpha});

  Problem p;
  p.kind = "robust-logreg";
  p.set = ConstraintSet::simplex(N);
  p.test_radius_x = test_radius_x;
  p.oracle.dim_x = d;
  p.oracle.dim_y = N;
  p.oracle.value = [P, N](const Vec& x, const Vec& y) {
    double loss = 0.0;
    for (int i = 0; i < N; ++i) loss += y[i] * logreg_loss_i(*P, i, x);
    loss /= N;
    const Vec r = static_cast<double>(N) * y - Vec::Ones(N);
    return loss - 0.5 * P->lambda1 * r.squaredNorm() + logreg_penalty(*P, x);
  };
  p.oracle.subgrad = [P, N](const Vec& x, const Vec& y) {
    Vec gx = logreg_penalty_grad(*P, x);
    Vec gy(N);
    for (int i = 0; i < N; ++i) {
      logreg_loss_grad_i(*P, i, x, y[i] / N, gx);
      gy[i] = logreg_loss_i(*P, i, x) / N -
              P->lambda1 * N * (N * y[i] - 1.0);
    }
    return GradPair{std::move(gx), std::move(gy)};
  };
  // uniform single-sample draw; the simplex tether stays deterministic
  p.oracle.stochastic_sample = [P, N](const Vec& x, const Vec& y,
                                      RngState& rng) {
    const int i = static_cast<int>(rng.uniform_index(N));
    Vec gx = logreg_penalty_grad(*P, x);
    logreg_loss_grad_i(*P, i, x, y[i], gx);
    Vec gy = -P->lambda1 * N * (static_cast<double>(N) * y - Vec::Ones(N));
    gy[i] += logreg_loss_i(*P, i, x);
    return GradPair{std::move(gx), std::move(gy)};
  };

  double max_row_norm2 = 0.0, sum_row_norm2 = 0.0;
  for (const auto& row : data.rows) {
    double s = 0.0;
    for (const auto& [idx, val] : row) s += val * val;
    max_row_norm2 = std::max(max_row_norm2, s);
    sum_row_norm2 += s;
  }
  const double max_row_norm = std::sqrt(max_row_norm2);

  auto& prof = p.oracle.profile;
  prof.strong_concavity_mu = lambda1 * N * N;
  const double ell_xx = 0.25 * max_row_norm2 / N + 2.0 * alpha * lambda2;
  const double ell_xy = std::sqrt(sum_row_norm2) / N;
  const double ell_yy = lambda1 * N * N;
  Mat blocks(2, 2);
  blocks << ell_xx, ell_xy, ell_xy, ell_yy;
  prof.smooth_ell = spectral_norm_sym(blocks);
  prof.weak_convexity_rho = 0.5 * alpha * lambda2;
  prof.diameter_D = std::sqrt(2.0);
  prof.lipschitz_L = max_row_norm / N +
                     2.0 * lambda2 * (9.0 / 16.0) * std::sqrt(alpha / 3.0) *
                         std::sqrt(static_cast<double>(d));
  // sampler variance bound over the test box (loss values grow linearly in x)
  const double loss_cap = log1pexp(max_row_norm * test_radius_x);
  prof.noise_var_sigma2 = std::max(max_row_norm2, loss_cap * loss_cap);
  prof.finalize_kappa();

  p.default_x0 = Vec::Zero(d);
  p.default_y0 = Vec::Constant(N, 1.0 / N);
  return p;
}

Problem make_wgan_linear(double mu_hat, double sigma_hat, double lambda,
                         double y_radius, double test_radius_x) {
  if (!(sigma_hat > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("make_wgan_linear: sigma_hat and lambda must be > 0");
  const double m2 = mu_hat * mu_hat + sigma_hat * sigma_hat;  // E a^2

  Problem p;
  p.kind = "wgan-linear";
  p.set = ConstraintSet::ball(Vec::Zero(2), y_radius);
  p.test_radius_x = test_radius_x;
  p.oracle.dim_x = 2;
  p.oracle.dim_y = 2;
  p.oracle.value = [mu_hat, m2, lambda](const Vec& x, const Vec& y) {
    return y[0] * (mu_hat - x[0]) + y[1] * (m2 - x[0] * x[0] - x[1] * x[1]) -
           lambda * y.squaredNorm();
  };
  p.oracle.subgrad = [mu_hat, m2, lambda](const Vec& x, const Vec& y) {
    Vec gx(2), gy(2);
    gx[0] = -y[0] - 2.0 * y[1] * x[0];
    gx[1] = -2.0 * y[1] * x[1];
    gy[0] = mu_hat - x[0] - 2.0 * lambda * y[0];
    gy[1] = m2 - x[0] * x[0] - x[1] * x[1] - 2.0 * lambda * y[1];
    return GradPair{std::move(gx), std::move(gy)};
  };
  p.oracle.stochastic_sample = [mu_hat, sigma_hat, lambda](
                                   const Vec& x, const Vec& y, RngState& rng) {
    const double a = mu_hat + sigma_hat * rng.normal();
    const double z = rng.normal();
    const double g = x[0] + x[1] * z;
    Vec gx(2), gy(2);
    gx[0] = -y[0] - 2.0 * y[1] * g;
    gx[1] = -z * (y[0] + 2.0 * y[1] * g);
    gy[0] = a - g - 2.0 * lambda * y[0];
    gy[1] = a * a - g * g - 2.0 * lambda * y[1];
    return GradPair{std::move(gx), std::move(gy)};
  };

  auto& prof = p.oracle.profile;
  prof.strong_concavity_mu = 2.0 * lambda;
  const double r = test_radius_x;
  const double ell_xx = 2.0 * y_radius;
  const double ell_xy = std::sqrt(1.0 + 4.0 * r * r) + 2.0 * r;  // conservative
  Mat blocks(2, 2);
  blocks << ell_xx, ell_xy, ell_xy, 2.0 * lambda;
  prof.smooth_ell = spectral_norm_sym(blocks);
  prof.weak_convexity_rho = 2.0 * y_radius;
  prof.diameter_D = 2.0 * y_radius;
  prof.lipschitz_L = y_radius * (1.0 + 4.0 * r);
  // sampler variance bound over the test box, from the exact moment formulas
  {
    const Vec xb = Vec::Constant(2, r), yb = Vec::Constant(2, y_radius);
    const SamplerMoments sm = wgan_sampler_moments(mu_hat, sigma_hat, lambda, xb, yb);
    prof.noise_var_sigma2 = std::max(sm.block_var_x, sm.block_var_y);
  }
  prof.finalize_kappa();

  p.default_x0 = Vec::Constant(2, 1.0);
  p.default_y0 = Vec::Zero(2);
  return p;
}

MinimaxOracle with_gaussian_noise(const MinimaxOracle& base, double sigma2) {
  if (sigma2 < 0.0)
    throw std::invalid_argument("with_gaussian_noise: sigma2 must be >= 0");
  MinimaxOracle noisy = base;
  const double sx = std::sqrt(sigma2 / base.dim_x);
  const double sy = std::sqrt(sigma2 / base.dim_y);
  auto subgrad = base.subgrad;
  const int dx = base.dim_x, dy = base.dim_y;
  noisy.stochastic_sample = [subgrad, sx, sy, dx, dy](const Vec& x, const Vec& y,
                                                      RngState& rng) {
    GradPair g = subgrad(x, y);
    if (sx > 0.0) g.gx += sx * rng.gaussian(dx);
    if (sy > 0.0) g.gy += sy * rng.gaussian(dy);
    return g;
  };
  noisy.profile.noise_var_sigma2 = sigma2;
  return noisy;
}

SamplerMoments wgan_sampler_moments(double mu_hat, double sigma_hat,
                                    double lambda, const Vec& x, const Vec& y) {
  // g = x0 + x1 z with z ~ N(0,1):   E g = x0, Var g = x1^2,
  // Var g^2 = 2 x1^4 + 4 x0^2 x1^2,  Var a^2 = 2 s^4 + 4 mu^2 s^2
  const double s2 = sigma_hat * sigma_hat;
  const double x0 = x[0], x1 = x[1];
  SamplerMoments sm;
  sm.mean_x = Vec(2);
  sm.mean_y = Vec(2);
  sm.var_x = Vec(2);
  sm.var_y = Vec(2);
  sm.mean_x[0] = -y[0] - 2.0 * y[1] * x0;
  sm.mean_x[1] = -2.0 * y[1] * x1;
  sm.mean_y[0] = mu_hat - x0 - 2.0 * lambda * y[0];
  sm.mean_y[1] = mu_hat * mu_hat + s2 - x0 * x0 - x1 * x1 - 2.0 * lambda * y[1];

  sm.var_x[0] = 4.0 * y[1] * y[1] * x1 * x1;
  // -z(y0 + 2 y1 x0) - 2 y1 x1 z^2: Var = (y0+2y1x0)^2 + 8 y1^2 x1^2
  const double c1 = y[0] + 2.0 * y[1] * x0;
  sm.var_x[1] = c1 * c1 + 8.0 * y[1] * y[1] * x1 * x1;
  sm.var_y[0] = s2 + x1 * x1;
  const double var_a2 = 2.0 * s2 * s2 + 4.0 * mu_hat * mu_hat * s2;
  const double var_g2 = 2.0 * std::pow(x1, 4) + 4.0 * x0 * x0 * x1 * x1;
  sm.var_y[1] = var_a2 + var_g2;
  sm.block_var_x = sm.var_x.sum();
  sm.block_var_y = sm.var_y.sum();
  return sm;
}

SamplerMoments logreg_sampler_moments(const DatasetLibsvm& data, double lambda1,
                                      double lambda2, double alpha,
                                      const Vec& x, const Vec& y) {
  const int N = data.num_samples, d = data.num_features;
  LogregParams P{data, lambda1, lambda2, alpha};
  // Enumerate the N equally likely draws. Deterministic terms cancel in the
  // variance, so only the sampled loss parts enter.
  Mat gxs = Mat::Zero(d, N);
  Mat gys = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    Vec gx = Vec::Zero(d);
    logreg_loss_grad_i(P, i, x, y[i], gx);
    gxs.col(i) = gx;
    gys(i, i) = logreg_loss_i(P, i, x);
  }
  SamplerMoments sm;
  sm.mean_x = gxs.rowwise().mean() + logreg_penalty_grad(P, x);
  Vec mean_loss = gys.rowwise().mean();
  sm.mean_y = mean_loss - lambda1 * N * (static_cast<double>(N) * y - Vec::Ones(N));
  sm.var_x = Vec::Zero(d);
  sm.var_y = Vec::Zero(N);
  const Vec mx = gxs.rowwise().mean();
  for (int i = 0; i < N; ++i) {
    sm.var_x += (gxs.col(i) - mx).cwiseAbs2();
    sm.var_y += (gys.col(i) - mean_loss).cwiseAbs2();
  }
  sm.var_x /= N;
  sm.var_y /= N;
  sm.block_var_x = sm.var_x.sum();
  sm.block_var_y = sm.var_y.sum();
  return sm;
}

}  // namespace ttgda
