#pragma once

#include "hp/geometry.hpp"
#include "hp/types.hpp"

#include <functional>
#include <memory>
#include <string>

namespace hp {

/// Compactly supported function with an analytic gradient. Value and
/// gradient vanish identically outside the declared support.
class TestFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using ProfileFn = std::function<double(double)>;

  static TestFunction custom(std::string name, Domain support, double sup_bound,
                             double gradient_bound, ValueFn value,
                             GradientFn gradient);

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  double directional_derivative(const Vector& x, const Direction& sigma) const;

  const Domain& support() const;
  int dimension() const;
  const std::string& name() const;

  /// Upper bound on |value| (exact for the built-in families).
  double sup_norm_bound() const;
  /// Upper bound on the Euclidean gradient norm, certified by dense
  /// profile sampling at construction.
  double gradient_sup_bound() const;

  /// Radial families expose their 1D profile for fast radial quadrature.
  bool radial() const;
  double radial_value(double r) const;
  double radial_slope(double r) const;

  TestFunction scaled_by(double factor) const;
  TestFunction translated(const Vector& t) const;
  /// u(x/s) with support dilated about the origin.
  TestFunction dilated(double s) const;

 private:
  struct Impl;
  explicit TestFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend TestFunction bump(const Vector&, double);
  friend TestFunction tensor_bump(const Domain&);
  friend TestFunction hardy_family(int, double, double, double, double);
};

/// Mollifier exp(-1/(1-|y|^2)), y = (x-center)/radius, supported on the
/// closed ball; peak value e^{-1} at the center.
TestFunction bump(const Vector& center, double radius);

/// Product of 1D mollifiers per axis, supported exactly on the given
/// finite box.
TestFunction tensor_bump(const Domain& box);

/// Near-extremal radial family for the singular-weight inequalities:
/// u(x) = g(max(|x|, delta)) * cutoff(|x|/outer_radius) with
/// g(r) = r^(-(N-p)/p + eps). Lipschitz; gradient defined a.e.
/// (smooth away from |x| = delta). Requires 1 <= p < N, 0 < delta < R,
/// eps >= 0.
TestFunction hardy_family(int dim, double p, double eps, double delta,
                          double outer_radius);

/// Rescales so that sup |u| <= 1 (no-op when already below one).
TestFunction clamp_unit(const TestFunction& u);

/// Smooth step: 0 for s <= 0, 1 for s >= 1, C-infinity throughout.
double smooth_step(double s);
double smooth_step_slope(double s);

}  // namespace hp
