#include "hp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hp {

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate requires p >= 1");
  if (p == 1.0) return inf;
  return p / (p - 1.0);
}

double modular_factor(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("modular factor requires p >= 1");
  const double tail = p <= 1.0 ? 0.0 : (p - 1.0) * std::log(p - 1.0);
  return std::exp(p * std::numbers::ln2 + tail);
}

// ------------------------------------------------------------ ExponentField

ExponentField ExponentField::constant(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("exponent field requires 1 <= p < inf");
  ExponentField f;
  f.kind_ = Kind::Constant;
  f.mono_ = Monotonicity::None;
  f.a_ = p;
  f.b_ = 0.0;
  f.p_max_ = p;
  return f;
}

ExponentField ExponentField::along(Direction sigma, Vector center, double a,
                                   double b, double p_max) {
  if (!(p_max >= 1.0) || !std::isfinite(p_max))
    throw std::invalid_argument("exponent field requires finite p_max >= 1");
  if (center.size() != sigma.dimension())
    throw std::invalid_argument("exponent center/direction dimension mismatch");
  ExponentField f;
  f.kind_ = Kind::AlongDirection;
  f.mono_ = b < 0.0 ? Monotonicity::Decreasing
            : b > 0.0 ? Monotonicity::Increasing
                      : Monotonicity::None;
  f.a_ = a;
  f.b_ = b;
  f.p_max_ = p_max;
  f.center_ = std::move(center);
  f.sigma_ = std::move(sigma);
  return f;
}

ExponentField ExponentField::radial(Vector center, double a, double b,
                                    double p_max) {
  if (!(p_max >= 1.0) || !std::isfinite(p_max))
    throw std::invalid_argument("exponent field requires finite p_max >= 1");
  if (center.size() == 0)
    throw std::invalid_argument("radial exponent needs a center");
  ExponentField f;
  f.kind_ = Kind::Radial;
  f.mono_ = b < 0.0 ? Monotonicity::Decreasing
            : b > 0.0 ? Monotonicity::Increasing
                      : Monotonicity::None;
  f.a_ = a;
  f.b_ = b;
  f.p_max_ = p_max;
  f.center_ = std::move(center);
  return f;
}

double ExponentField::profile(double s) const {
  return std::clamp(a_ + b_ * s, 1.0, p_max_);
}

double ExponentField::operator()(const Vector& x) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::AlongDirection: {
      const Vector d = x - center_;
      const Vector perp = d - d.dot(sigma_->vec()) * sigma_->vec();
      return profile(perp.norm());
    }
    case Kind::Radial:
      return profile((x - center_).norm());
  }
  return a_;
}

double ExponentField::constant_value() const {
  if (kind_ != Kind::Constant)
    throw std::logic_error("constant_value() on a non-constant field");
  return a_;
}

bool ExponentField::constant_along(const Direction& sigma) const {
  switch (kind_) {
    case Kind::Constant:
      return true;
    case Kind::AlongDirection:
      return sigma_->parallel_to(sigma);
    case Kind::Radial:
      return b_ == 0.0 || profile(0.0) == profile(inf);
  }
  return false;
}

Interval ExponentField::profile_range(const Interval& s_range) const {
  // affine + clip is monotone, so endpoints carry the range
  double at_lo, at_hi;
  if (std::isinf(s_range.hi)) {
    at_hi = b_ > 0.0 ? p_max_ : b_ < 0.0 ? 1.0 : profile(0.0);
  } else {
    at_hi = profile(s_range.hi);
  }
  at_lo = profile(s_range.lo);
  return {std::min(at_lo, at_hi), std::max(at_lo, at_hi)};
}

Interval ExponentField::range_on(const Domain& domain) const {
  switch (kind_) {
    case Kind::Constant:
      return {a_, a_};
    case Kind::AlongDirection:
      return profile_range(transverse_distance_range(domain, *sigma_, center_));
    case Kind::Radial:
      return profile_range(domain.distance_range(center_));
  }
  return {a_, a_};
}

std::optional<Interval> ExponentField::range_on_slice(const Domain& domain,
                                                      const Direction& sigma,
                                                      double t) const {
  switch (kind_) {
    case Kind::Constant:
      if (!domain.projects_to(sigma, t)) return std::nullopt;
      return Interval{a_, a_};
    case Kind::AlongDirection: {
      if (!sigma_->parallel_to(sigma))
        throw std::runtime_error(
            "slice exponent range needs the field direction parallel to sigma");
      if (!domain.projects_to(sigma, t)) return std::nullopt;
      // p does not vary along sigma, so every slice sees the full range
      return range_on(domain);
    }
    case Kind::Radial: {
      const auto r = slice_distance_range(domain, sigma, t, center_);
      if (!r) return std::nullopt;
      return profile_range(*r);
    }
  }
  return std::nullopt;
}

double ExponentField::radial_profile(double r) const {
  if (kind_ != Kind::Radial)
    throw std::logic_error("radial_profile() on a non-radial field");
  return profile(r);
}

double ExponentField::radial_profile_derivative(double r) const {
  if (kind_ != Kind::Radial)
    throw std::logic_error("radial_profile_derivative() on a non-radial field");
  const double raw = a_ + b_ * r;
  if (raw <= 1.0 || raw >= p_max_) return 0.0;  // clip active
  return b_;
}

ExponentField ExponentField::translated(const Vector& t) const {
  switch (kind_) {
    case Kind::Constant:
      return *this;
    case Kind::AlongDirection:
      return along(*sigma_, center_ + t, a_, b_, p_max_);
    case Kind::Radial:
      return radial(center_ + t, a_, b_, p_max_);
  }
  return *this;
}

std::string ExponentField::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << a_;
      break;
    case Kind::AlongDirection:
      os << "along(" << a_ << (b_ < 0.0 ? "" : "+") << b_ << "*s"
         << " clip[1.." << p_max_ << "])";
      break;
    case Kind::Radial:
      os << "radial(" << a_ << (b_ < 0.0 ? "" : "+") << b_ << "*r"
         << " clip[1.." << p_max_ << "])";
      break;
  }
  return os.str();
}

// ------------------------------------------------------------- constants

double modular_constant(const ExponentField& p, const Domain& domain) {
  const Interval range = p.range_on(domain);
  return std::max(modular_factor(range.lo), modular_factor(range.hi));
}

namespace {

// sup over an exponent interval of d^p sits at an endpoint: d < 1 favors
// the smallest exponent, d > 1 the largest.
double power_sup(double d, const Interval& p_range) {
  if (d == 0.0) return 0.0;
  return std::max(std::pow(d, p_range.lo), std::pow(d, p_range.hi));
}

}  // namespace

double directional_modular_constant(const ExponentField& p,
                                    const Domain& domain,
                                    const Direction& sigma) {
  const Interval proj = projection_interval(domain, sigma);
  if (!proj.finite())
    throw std::invalid_argument(
        "directional modular constant requires a domain bounded along sigma");

  constexpr int kSamples = 4096;
  std::vector<double> ts;
  std::vector<Interval> ranges;
  ts.reserve(kSamples + 1);
  ranges.reserve(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    const double t = proj.lo + proj.width() * i / double(kSamples);
    const auto r = p.range_on_slice(domain, sigma, t);
    if (!r) continue;
    ts.push_back(t);
    ranges.push_back(*r);
  }
  if (ts.empty())
    throw std::runtime_error("projection sampling found no admissible slices");

  auto sup_for = [&](double t0) {
    double best = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      best = std::max(best, power_sup(std::abs(ts[i] - t0), ranges[i]));
    return best;
  };

  // golden-section on a convex objective
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = proj.lo, b = proj.hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = sup_for(c), fd = sup_for(d);
  const double tol = 1e-12 * std::max(proj.width(), 1.0);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = sup_for(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = sup_for(d);
    }
  }
  const double inner = std::min(fc, fd);
  return modular_constant(p, domain) * inner;
}

}  // namespace hp
