#pragma once

#include "hp/geometry.hpp"
#include "hp/types.hpp"

#include <optional>
#include <string>

namespace hp {

/// q with 1/p + 1/q = 1; +inf at p = 1.
double conjugate_exponent(double p);

/// 2^p (p-1)^(p-1), extended continuously with value 2 at p = 1.
/// Has a single interior minimum near p = 1.184, so its supremum on any
/// interval is attained at an endpoint.
double modular_factor(double p);

/// Variable exponent field p(.) with values in [1, p_max].
/// Variants: constant; constant along a direction with affine transverse
/// profile clip(a + b*|P(x - center)|, 1, p_max); radial with affine profile
/// clip(a + b*|x - center|, 1, p_max).
class ExponentField {
 public:
  enum class Kind { Constant, AlongDirection, Radial };
  enum class Monotonicity { Decreasing, Increasing, None };

  static ExponentField constant(double p);
  static ExponentField along(Direction sigma, Vector center, double a,
                             double b, double p_max);
  static ExponentField radial(Vector center, double a, double b, double p_max);

  double operator()(const Vector& x) const;

  Kind kind() const { return kind_; }
  double p_max() const { return p_max_; }
  Monotonicity monotonicity() const { return mono_; }
  const Vector& center() const { return center_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  double constant_value() const;

  /// True when p(x + t*sigma) = p(x) for all t.
  bool constant_along(const Direction& sigma) const;

  /// Exact range of p over the domain.
  Interval range_on(const Domain& domain) const;

  /// Exact range of p over the slice {x.sigma = t}; nullopt if empty.
  std::optional<Interval> range_on_slice(const Domain& domain,
                                         const Direction& sigma,
                                         double t) const;

  /// Radial profile and its derivative (zero where the clip is active).
  double radial_profile(double r) const;
  double radial_profile_derivative(double r) const;

  ExponentField translated(const Vector& t) const;

  std::string describe() const;

 private:
  ExponentField() = default;

  Kind kind_ = Kind::Constant;
  Monotonicity mono_ = Monotonicity::None;
  double a_ = 2.0;
  double b_ = 0.0;
  double p_max_ = 2.0;
  Vector center_;
  std::optional<Direction> sigma_;

  double profile(double s) const;
  Interval profile_range(const Interval& s_range) const;
};

/// sup over the domain of modular_factor(p(x)), computed from the exact
/// range of p and the endpoint-dominance of the factor.
double modular_constant(const ExponentField& p, const Domain& domain);

/// modular_constant(p) * inf over t0 of sup over the domain of
/// |x.sigma - t0|^p(x). The outer infimum is found by golden-section search
/// on the projection interval (the objective is convex in t0); the inner
/// supremum by dense sampling of the per-slice exponent range.
double directional_modular_constant(const ExponentField& p,
                                    const Domain& domain,
                                    const Direction& sigma);

}  // namespace hp
