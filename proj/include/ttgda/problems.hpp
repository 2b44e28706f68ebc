#pragma once

#include <iosfwd>

#include "ttgda/geometry.hpp"

namespace ttgda {

struct DatasetLibsvm {
  int num_samples = 0;
  int num_features = 0;
  std::vector<double> labels;  // normalized to +1/-1
  std::vector<std::vector<std::pair<int, double>>> rows;  // 1-based, increasing
};

/// Parses "label idx:val idx:val ..." lines; '#' starts a comment, 0/1 labels
/// map to -1/+1, indices must be 1-based and strictly increasing. Errors
/// report the offending line number.
DatasetLibsvm parse_libsvm(std::istream& in);
DatasetLibsvm parse_libsvm_file(const std::string& path);

/// Two Gaussian blobs with +-1 labels; stands in for downloaded corpora.
DatasetLibsvm synthetic_blobs(int num_samples, int num_features, double margin,
                              std::uint64_t seed);

/// A built-in benchmark: oracle, feasible set, and whatever closed-form
/// reference structure the construction admits. Reference closures are null
/// when no closed form exists; phi_min is NaN when unknown. Profile constants
/// for unbounded-x problems are certified over the declared compact test box
/// of radius test_radius_x.
struct Problem {
  std::string kind;
  MinimaxOracle oracle;
  ConstraintSet set = ConstraintSet::simplex(1);
  std::function<double(const Vec&)> phi_ref;
  std::function<Vec(const Vec&)> grad_phi_ref;
  std::function<Vec(const Vec&)> y_star_ref;
  double phi_min = kNaN;
  double test_radius_x = 10.0;
  Vec default_x0;
  Vec default_y0;
};

/// f(x, y) = c * x * y on Y = [-R, R]; Phi(x) = |c| R |x|.
Problem make_bilinear(double scale, double radius);

/// f(x, y) = 0.5 x'Qx + x'Cy - (mu/2)||y||^2 on the Euclidean ball of radius
/// R, with closed-form y*(x) = C'x/mu, Phi and grad Phi on the interior
/// region. Q must be symmetric with at least one negative eigenvalue.
Problem make_quadratic_ncsc(const Mat& Q, const Mat& C, double mu,
                            double radius, double test_radius_x = 10.0);

/// Deterministically seeded instance with a prescribed condition number;
/// phi_min = 0 by construction.
Problem make_quadratic_ncsc_demo(int dim_x, int dim_y, double kappa_target,
                                 std::uint64_t seed);

/// Sample-weighted logistic loss with a bounded nonconvex penalty on x and a
/// quadratic tether on the simplex weights y.
Problem make_robust_logreg(const DatasetLibsvm& data, double lambda1,
                           double lambda2, double alpha,
                           double test_radius_x = 5.0);

/// Moment-matching game for a linear generator x and quadratic discriminator
/// y against N(mu_hat, sigma_hat^2) data; deterministic oracle in closed form
/// plus a per-draw sampler.
Problem make_wgan_linear(double mu_hat, double sigma_hat, double lambda,
                         double y_radius = 5.0, double test_radius_x = 2.0);

/// Wraps a deterministic oracle with an additive-Gaussian sampler whose
/// per-block variance is exactly sigma2 (split evenly across coordinates).
MinimaxOracle with_gaussian_noise(const MinimaxOracle& base, double sigma2);

/// Exact per-coordinate mean/variance of a single sampler draw, computed by
/// closed-form moments (wgan) or enumeration (logreg). Independent of the
/// sampling path; used to certify the sampler contract.
struct SamplerMoments {
  Vec mean_x, mean_y;
  Vec var_x, var_y;
  double block_var_x = 0.0;  // E ||G_x - E G_x||^2
  double block_var_y = 0.0;
};

SamplerMoments wgan_sampler_moments(double mu_hat, double sigma_hat,
                                    double lambda, const Vec& x, const Vec& y);

SamplerMoments logreg_sampler_moments(const DatasetLibsvm& data, double lambda1,
                                      double lambda2, double alpha,
                                      const Vec& x, const Vec& y);

}  // namespace ttgda
