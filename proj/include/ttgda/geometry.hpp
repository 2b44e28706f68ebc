#pragma once

#include "ttgda/core.hpp"

namespace ttgda {

/// Convex bounded feasible sets with exact Euclidean projections: coordinate
/// boxes, Euclidean balls, the probability simplex, and an unvalidated
/// user-supplied projection hook.
class ConstraintSet {
 public:
  enum class Kind { Box, Ball, Simplex, Custom };

  static ConstraintSet box(Vec lower, Vec upper);
  static ConstraintSet ball(Vec center, double radius);
  static ConstraintSet simplex(int n);
  static ConstraintSet custom(int dim, std::function<Vec(const Vec&)> projection,
                              double diameter);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double diameter() const { return diameter_; }

  /// Euclidean projection onto the set; exact for the three built-in kinds.
  Vec project(const Vec& v) const;

  /// True iff dist(v, Y) <= tol.
  bool contains(const Vec& v, double tol) const;

  /// A canonical feasible point (box midpoint, ball center, barycenter).
  Vec center() const;

 private:
  ConstraintSet() = default;

  Kind kind_ = Kind::Box;
  int dim_ = 0;
  double diameter_ = 0.0;
  Vec lower_, upper_;  // box
  Vec center_;         // ball
  double radius_ = 0.0;
  std::function<Vec(const Vec&)> custom_proj_;
};

/// Sort-and-threshold projection onto {u >= 0, sum u = 1}.
Vec project_simplex(const Vec& v);

}  // namespace ttgda
