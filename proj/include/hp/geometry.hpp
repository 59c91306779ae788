#pragma once

#include "hp/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hp {

/// Unit vector in R^N. The constructor normalizes, so the unit-norm
/// invariant holds exactly up to rounding.
class Direction {
 public:
  explicit Direction(Vector v);

  const Vector& vec() const { return v_; }
  int dimension() const { return static_cast<int>(v_.size()); }
  double dot(const Vector& x) const { return v_.dot(x); }

  /// Index of the coordinate axis this direction is aligned with, if any.
  std::optional<int> axis(double tol = 1e-12) const;

  bool parallel_to(const Direction& other, double tol = 1e-12) const;

 private:
  Vector v_;
};

Direction axis_direction(int dim, int axis);

/// Open subset of R^N: axis-aligned box (sides may be infinite), ball,
/// annulus, strip {a < x.sigma < b}, or a finite union of those.
/// Indicator and support function are exact; no sampling is involved.
class Domain {
 public:
  static Domain box(Vector lo, Vector hi);
  static Domain ball(Vector center, double radius);
  static Domain annulus(Vector center, double inner, double outer);
  static Domain strip(Direction normal, double a, double b);
  static Domain unite(std::vector<Domain> members);

  int dimension() const { return dim_; }

  /// Exact indicator. `tol` inflates the set, used for closure checks.
  bool contains(const Vector& x, double tol = 0.0) const;

  /// sup over the domain of x.sigma (+inf on unbounded sides).
  double support(const Direction& sigma) const;

  /// True iff every axis of the bounding box is finite.
  bool bounded() const;
  bool bounded_along(const Direction& sigma) const;

  /// Per-axis bounding box; entries may be infinite.
  std::pair<Vector, Vector> bounding_box() const;

  /// [inf, sup] of |x - x0| over the closure of the domain.
  Interval distance_range(const Vector& x0) const;

  /// True iff the slice {x in domain : x.sigma = t} is nonempty.
  bool projects_to(const Direction& sigma, double t) const;

  enum class ShapeKind { Box, Ball, Annulus, Strip, Union };
  ShapeKind shape_kind() const;
  bool is_union() const { return shape_kind() == ShapeKind::Union; }
  const std::vector<Domain>& members() const;

  /// Center and radii for balls and annuli (inner radius 0 for balls).
  const Vector& center() const;
  double outer_radius() const;
  double inner_radius() const;

  /// True when the node-centered cell [x - h/2, x + h/2]^N lies inside.
  bool cell_inside(const Vector& x, const Vector& half_widths) const;

  Domain translated(const Vector& t) const;
  Domain scaled(double s) const;  // about the origin, s > 0

  std::string describe() const;

 private:
  struct Shape;
  Domain(int dim, std::shared_ptr<const Shape> shape);

  int dim_;
  std::shared_ptr<const Shape> shape_;
};

/// Convex-hull closure of {x.sigma : x in domain}.
Interval projection_interval(const Domain& domain, const Direction& sigma);

/// inf over centers of sup |(x - x0).sigma| = half the projection width.
double directional_constant(const Domain& domain, const Direction& sigma);

/// Radius of the smallest ball enclosing the closure of the domain.
/// Exact for primitives; iteratively refined for unions.
double circumradius(const Domain& domain);

/// sup |x - y| over the domain; exact for primitives and finite unions.
double diameter(const Domain& domain);

struct BestDirection {
  int index;
  Direction sigma;
  double value;
};

/// Basis direction minimizing the directional constant; ties go to the
/// lowest index.
BestDirection best_direction(const Domain& domain,
                             const std::vector<Direction>& basis);

/// Range of |P(x - center)| over the domain, with P the projector onto the
/// orthogonal complement of sigma. Throws when the combination has no
/// closed form (see README).
Interval transverse_distance_range(const Domain& domain,
                                   const Direction& sigma,
                                   const Vector& center);

/// Range of |x - center| over the slice {x in domain : x.sigma = t};
/// nullopt when the slice is empty.
std::optional<Interval> slice_distance_range(const Domain& domain,
                                             const Direction& sigma, double t,
                                             const Vector& center);

}  // namespace hp
