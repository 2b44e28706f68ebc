#include "ttgda/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ttgda {

ConstraintSet ConstraintSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw std::invalid_argument("box: bounds must be nonempty and same size");
  for (int i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i]))
      throw std::invalid_argument("box: lower > upper at coordinate " +
                                  std::to_string(i));
  ConstraintSet s;
  s.kind_ = Kind::Box;
  s.dim_ = static_cast<int>(lower.size());
  s.diameter_ = (upper - lower).norm();
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

ConstraintSet ConstraintSet::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  ConstraintSet s;
  s.kind_ = Kind::Ball;
  s.dim_ = static_cast<int>(center.size());
  s.diameter_ = 2.0 * radius;
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

ConstraintSet ConstraintSet::simplex(int n) {
  if (n < 1) throw std::invalid_argument("simplex: dimension must be >= 1");
  ConstraintSet s;
  s.kind_ = Kind::Simplex;
  s.dim_ = n;
  s.diameter_ = std::sqrt(2.0);
  return s;
}

ConstraintSet ConstraintSet::custom(int dim,
                                    std::function<Vec(const Vec&)> projection,
                                    double diameter) {
  if (dim < 1 || !projection || !(diameter > 0.0))
    throw std::invalid_argument("custom: need dim >= 1, projection, diameter > 0");
  ConstraintSet s;
  s.kind_ = Kind::Custom;
  s.dim_ = dim;
  s.diameter_ = diameter;
  s.custom_proj_ = std::move(projection);
  return s;
}

Vec project_simplex(const Vec& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = u[0] - 1.0;
  // scan for the largest support whose threshold keeps all kept coords positive;
  // ties break toward the larger support (the minimizer is unique either way)
  for (int j = 0; j < n; ++j) {
    cumsum += u[j];
    const double cand = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) tau = cand;
  }
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

Vec ConstraintSet::project(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("project: dimension mismatch, got " +
                                std::to_string(v.size()) + " expected " +
                                std::to_string(dim_));
  switch (kind_) {
    case Kind::Box:
      return v.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::Ball: {
      const Vec d = v - center_;
      const double norm = d.norm();
      if (norm <= radius_) return v;
      return center_ + (radius_ / norm) * d;
    }
    case Kind::Simplex:
      return project_simplex(v);
    case Kind::Custom:
      return custom_proj_(v);
  }
  return v;
}

bool ConstraintSet::contains(const Vec& v, double tol) const {
  return (v - project(v)).norm() <= tol;
}

Vec ConstraintSet::center() const {
  switch (kind_) {
    case Kind::Box:
      return 0.5 * (lower_ + upper_);
    case Kind::Ball:
      return center_;
    case Kind::Simplex:
      return Vec::Constant(dim_, 1.0 / dim_);
    case Kind::Custom:
      return custom_proj_(Vec::Zero(dim_));
  }
  return Vec::Zero(dim_);
}

}  // namespace ttgda
