#pragma once

#include "hp/exponents.hpp"
#include "hp/functions.hpp"
#include "hp/geometry.hpp"
#include "hp/types.hpp"

#include <functional>
#include <optional>

namespace hp {

/// Tensor grid over a finite box, n cells per axis. Midpoint evaluation
/// happens at n and 2n; cells whose centers fail the domain indicator are
/// skipped. When a singular point is set and the integral carries a
/// SingularFactor, cells meeting the exclusion ball of radius
/// exclusion_multiplier * max cell size are dropped from both resolutions
/// and accounted for analytically.
struct Grid {
  Vector lo;
  Vector hi;
  int n = 256;
  std::optional<Vector> singular_point;
  double exclusion_multiplier = 2.0;

  int dimension() const { return static_cast<int>(lo.size()); }
  double max_cell_size() const;
};

/// Bounding box of support intersected with the domain's bounding box.
Grid make_grid(const Domain& domain, const Domain& support, int n,
               double exclusion_multiplier = 2.0);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Integrand splitting f = factor * |x - x0|^(-gamma) with bounded factor;
/// feeds the analytic bound on the excluded-ball mass.
struct SingularFactor {
  double gamma;
  double factor_sup;
};

using Integrand = std::function<double(const Vector&)>;
using WeightFn = std::function<double(const Vector&)>;

/// Midpoint rule at n and 2n; value is the fine result, error estimate is
/// |fine - coarse| / 3 plus the analytic excluded-mass bound when a
/// singular point is active. Rejects gamma >= N (non-integrable).
IntegralResult integrate(const Integrand& f, const Domain& domain,
                         const Grid& grid,
                         const std::optional<SingularFactor>& singular = {});

/// Integral of |u(x)|^p(x) * weight(x); 0^p is 0, an absent weight is 1.
IntegralResult modular_integral(const TestFunction& u, const ExponentField& p,
                                const WeightFn& weight, const Domain& domain,
                                const Grid& grid,
                                const std::optional<SingularFactor>& singular = {});

/// Integral of (sum_i |d_i u|^p(x)) * |x - x0|^radial_power * weight(x).
IntegralResult gradient_modular_integral(
    const TestFunction& u, const ExponentField& p, const WeightFn& weight,
    const Vector& x0, double radial_power, const Domain& domain,
    const Grid& grid, const std::optional<SingularFactor>& singular = {});

/// Integral of |du/dsigma|^p(x), optionally times |(x - x0).sigma|^p(x).
IntegralResult directional_modular_integral(
    const TestFunction& u, const ExponentField& p, const Direction& sigma,
    bool projection_factor, const Vector& x0, const Domain& domain,
    const Grid& grid);

/// surface(N) * integral of f(r) r^(N-1) dr by composite Simpson at n and
/// 2n with a Richardson error estimate. `at_zero` supplies the value of
/// f(r) r^(N-1) at r = 0 when f itself is singular there.
IntegralResult radial_integrate(const std::function<double(double)>& f,
                                int dim, double r_lo, double r_hi, int n,
                                double at_zero = 0.0);

/// Quadrature of the variable-exponent logarithmic remainder
///   profile'(|x - c|) * ((x - c).sigma)^2 / |x - c|
///     * log|u(x)| * |u(x)|^p(x)
/// with the integrand extended by 0 where u vanishes and at x = c.
/// Requires a radial field.
IntegralResult log_term_integral(const ExponentField& p, const TestFunction& u,
                                 const Direction& sigma, const Domain& domain,
                                 const Grid& grid);

double unit_sphere_surface(int dim);  // |S^{N-1}|
double unit_ball_volume(int dim);

/// Sphere average of sum_i |w_i|^p times N; converts |G'(r)|^p profiles to
/// the componentwise gradient convention. Equals 1 at p = 2.
double lp_sphere_moment(int dim, double p);

}  // namespace hp
