#pragma once

#include "hp/geometry.hpp"
#include "hp/types.hpp"

namespace hp {

/// Parameters of the weight (lambda + |x - x0|^alpha)^(-beta).
/// Requires lambda > 0, alpha > 0, beta != 0 and alpha*beta < N.
struct WeightParams {
  WeightParams(double lambda, double alpha, double beta, Vector x0);

  int dimension() const { return static_cast<int>(x0.size()); }

  double lambda;
  double alpha;
  double beta;
  Vector x0;
};

/// (lambda + |x - x0|^alpha)^(-beta); finite and positive everywhere.
double weight_value(const WeightParams& w, const Vector& x);

/// div[w(x) (x - x0)] in closed form:
/// (N - alpha*beta * |x-x0|^alpha / (lambda + |x-x0|^alpha)) * w(x).
double weight_divergence(const WeightParams& w, const Vector& x);

/// Universal lower bound of weight_divergence / weight_value:
/// N - alpha*beta for beta > 0, N for beta < 0.
double divergence_lower_bound(const WeightParams& w);

/// Domain-refined bound: for beta < 0 adds
/// alpha*|beta| * inf over the domain of |x-x0|^alpha/(lambda+|x-x0|^alpha),
/// evaluated from the exact distance range (the dependence on |x-x0| is
/// monotone increasing).
double divergence_lower_bound(const WeightParams& w, const Domain& over);

enum class LimitWeightMode { Singular, Dual, None };

/// Limit weights |x-x0|^(-gamma) (singular, 0 < gamma < N) and
/// |x-x0|^(+gamma) (dual, gamma > 0).
struct LimitWeightParams {
  LimitWeightParams(double gamma, LimitWeightMode mode, int dim);

  double gamma;
  LimitWeightMode mode;
};

// Certified multiplicative constants on the gradient-side modular.
// All reject out-of-range parameters naming the violated hypothesis.

double general_weighted_constant(double p, const WeightParams& w);  // (p/k)^p
double general_weighted_constant(double p, const WeightParams& w,
                                 const Domain& refined_over);
double gamma_hardy_constant(double p, double gamma, int dim);  // (p/(N-g))^p
double sharp_hardy_constant(double p, int dim);                // (p/(N-p))^p
double dual_hardy_constant(double p, int dim);                 // (p/N)^p
double classical_poincare_constant(double p, int dim,
                                   double enclosing_radius);  // ((p/N)c)^p

}  // namespace hp
