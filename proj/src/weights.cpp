#include "hp/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hp {

namespace {

[[noreturn]] void reject(const std::string& what) {
  throw std::invalid_argument(what);
}

double power(double base, double exponent) { return std::pow(base, exponent); }

}  // namespace

WeightParams::WeightParams(double lambda_, double alpha_, double beta_,
                           Vector x0_)
    : lambda(lambda_), alpha(alpha_), beta(beta_), x0(std::move(x0_)) {
  if (x0.size() == 0 || !x0.allFinite())
    reject("weight center x0 must be finite and nonempty");
  if (!(lambda > 0.0)) reject("weight requires lambda > 0");
  if (!(alpha > 0.0)) reject("weight requires alpha > 0");
  if (beta == 0.0 || !std::isfinite(beta)) reject("weight requires beta != 0");
  const double n = static_cast<double>(dimension());
  if (!(alpha * beta < n)) {
    std::ostringstream os;
    os << "weight requires alpha*beta < N (got alpha*beta = " << alpha * beta
       << ", N = " << dimension() << ")";
    reject(os.str());
  }
}

double weight_value(const WeightParams& w, const Vector& x) {
  const double r = (x - w.x0).norm();
  return power(w.lambda + power(r, w.alpha), -w.beta);
}

double weight_divergence(const WeightParams& w, const Vector& x) {
  const double r = (x - w.x0).norm();
  const double ra = power(r, w.alpha);
  const double ratio = ra / (w.lambda + ra);
  const double n = static_cast<double>(w.dimension());
  return (n - w.alpha * w.beta * ratio) * power(w.lambda + ra, -w.beta);
}

double divergence_lower_bound(const WeightParams& w) {
  const double n = static_cast<double>(w.dimension());
  return w.beta > 0.0 ? n - w.alpha * w.beta : n;
}

double divergence_lower_bound(const WeightParams& w, const Domain& over) {
  const double n = static_cast<double>(w.dimension());
  if (w.beta > 0.0) return n - w.alpha * w.beta;
  // r^alpha/(lambda + r^alpha) increases in r, so the infimum sits at the
  // smallest distance the closure of the domain attains from x0
  const double r_min = over.distance_range(w.x0).lo;
  const double ra = power(r_min, w.alpha);
  return n + w.alpha * std::abs(w.beta) * (ra / (w.lambda + ra));
}

LimitWeightParams::LimitWeightParams(double gamma_, LimitWeightMode mode_,
                                     int dim)
    : gamma(gamma_), mode(mode_) {
  switch (mode) {
    case LimitWeightMode::Singular:
      if (!(gamma > 0.0) || !(gamma < static_cast<double>(dim)))
        reject("singular limit weight requires 0 < gamma < N");
      break;
    case LimitWeightMode::Dual:
      if (!(gamma > 0.0)) reject("dual limit weight requires gamma > 0");
      break;
    case LimitWeightMode::None:
      if (gamma != 0.0) reject("mode 'none' requires gamma = 0");
      break;
  }
}

namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) reject("requires exponent p >= 1");
}

}  // namespace

double general_weighted_constant(double p, const WeightParams& w) {
  require_p(p);
  return power(p / divergence_lower_bound(w), p);
}

double general_weighted_constant(double p, const WeightParams& w,
                                 const Domain& refined_over) {
  require_p(p);
  return power(p / divergence_lower_bound(w, refined_over), p);
}

double gamma_hardy_constant(double p, double gamma, int dim) {
  require_p(p);
  if (!(gamma > 0.0) || !(gamma < static_cast<double>(dim)))
    reject("gamma-type constant requires 0 < gamma < N");
  return power(p / (static_cast<double>(dim) - gamma), p);
}

double sharp_hardy_constant(double p, int dim) {
  require_p(p);
  if (!(p < static_cast<double>(dim)))
    reject("sharp constant requires p < N");
  return power(p / (static_cast<double>(dim) - p), p);
}

double dual_hardy_constant(double p, int dim) {
  require_p(p);
  return power(p / static_cast<double>(dim), p);
}

double classical_poincare_constant(double p, int dim,
                                   double enclosing_radius) {
  require_p(p);
  if (!std::isfinite(enclosing_radius) || !(enclosing_radius > 0.0))
    reject("bounded-domain constant requires a finite enclosing radius");
  return power(p / static_cast<double>(dim) * enclosing_radius, p);
}

}  // namespace hp
