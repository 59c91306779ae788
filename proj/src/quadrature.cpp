#include "hp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hp {

double Grid::max_cell_size() const {
  double m = 0.0;
  for (int k = 0; k < lo.size(); ++k) m = std::max(m, (hi[k] - lo[k]) / n);
  return m;
}

Grid make_grid(const Domain& domain, const Domain& support, int n,
               double exclusion_multiplier) {
  auto [dlo, dhi] = domain.bounding_box();
  auto [slo, shi] = support.bounding_box();
  if (!slo.allFinite() || !shi.allFinite())
    throw std::invalid_argument("integration needs a compactly supported function");
  Grid g;
  g.lo = dlo.cwiseMax(slo);
  g.hi = dhi.cwiseMin(shi);
  g.n = std::max(8, n);
  g.exclusion_multiplier = exclusion_multiplier;
  return g;
}

double unit_sphere_surface(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double unit_ball_volume(int dim) { return unit_sphere_surface(dim) / dim; }

double lp_sphere_moment(int dim, double p) {
  return dim * std::tgamma(0.5 * (p + 1.0)) * std::tgamma(0.5 * dim) /
         (std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (dim + p)));
}

namespace {

// Sum of f over included cell centers at resolution m per axis. Cells are
// visited in a fixed lexicographic order and reduced pairwise per block, so
// the result does not depend on the worker count.
double sum_cells(const Integrand& f, const Domain& domain, const Vector& lo,
                 const Vector& hi, int m, const std::optional<Vector>& excl,
                 double excl_radius) {
  const int dim = static_cast<int>(lo.size());
  Vector h(dim);
  for (int k = 0; k < dim; ++k) h[k] = (hi[k] - lo[k]) / m;

  std::int64_t total = 1;
  for (int k = 0; k < dim; ++k) total *= m;

  constexpr std::int64_t kBlock = 1 << 15;
  const std::int64_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<double> block_sums(static_cast<std::size_t>(nblocks), 0.0);

  auto run_blocks = [&](std::int64_t first, std::int64_t stride) {
    Vector x(dim);
    std::vector<double> buf;
    buf.reserve(kBlock);
    for (std::int64_t b = first; b < nblocks; b += stride) {
      buf.clear();
      const std::int64_t end = std::min(total, (b + 1) * kBlock);
      for (std::int64_t idx = b * kBlock; idx < end; ++idx) {
        std::int64_t rem = idx;
        for (int k = 0; k < dim; ++k) {
          const std::int64_t i = rem % m;
          rem /= m;
          x[k] = lo[k] + (i + 0.5) * h[k];
        }
        if (excl) {
          double d2 = 0.0;
          for (int k = 0; k < dim; ++k) {
            const double d = std::max(0.0, std::abs(x[k] - (*excl)[k]) - 0.5 * h[k]);
            d2 += d * d;
          }
          if (d2 < excl_radius * excl_radius) continue;
        }
        if (!domain.contains(x)) continue;
        buf.push_back(f(x));
      }
      block_sums[static_cast<std::size_t>(b)] = pairwise_sum(buf);
    }
  };

  const int workers =
      static_cast<int>(std::min<std::int64_t>(worker_count(), nblocks));
  if (workers <= 1) {
    run_blocks(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_blocks, w, workers);
    for (auto& t : pool) t.join();
  }
  return pairwise_sum(block_sums);
}

}  // namespace

IntegralResult integrate(const Integrand& f, const Domain& domain,
                         const Grid& grid,
                         const std::optional<SingularFactor>& singular) {
  const int dim = grid.dimension();
  if (dim != domain.dimension())
    throw std::invalid_argument("grid/domain dimension mismatch");
  for (int k = 0; k < dim; ++k)
    if (!(grid.hi[k] > grid.lo[k])) return {0.0, 0.0};
  const int n = std::max(8, grid.n);

  if (singular && !grid.singular_point)
    throw std::invalid_argument("singular factor given without a singular point");
  double rho = 0.0;
  double excl_bound = 0.0;
  std::optional<Vector> excl;
  if (grid.singular_point && singular) {
    if (!(singular->gamma > 0.0))
      throw std::invalid_argument("singular exponent must be positive");
    if (singular->gamma >= dim)
      throw std::invalid_argument(
          "singular exponent gamma must be < N for integrability");
    rho = grid.exclusion_multiplier * grid.max_cell_size();
    excl = grid.singular_point;
    // only charge for the excluded mass when the ball can meet the box
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = std::max({0.0, grid.lo[k] - (*excl)[k],
                                 (*excl)[k] - grid.hi[k]});
      d2 += d * d;
    }
    if (d2 < rho * rho) {
      excl_bound = singular->factor_sup * unit_sphere_surface(dim) *
                   std::pow(rho, dim - singular->gamma) /
                   (dim - singular->gamma);
    } else {
      excl.reset();
    }
  }

  auto value_at = [&](int m) {
    double vol = 1.0;
    for (int k = 0; k < dim; ++k) vol *= (grid.hi[k] - grid.lo[k]) / m;
    return vol * sum_cells(f, domain, grid.lo, grid.hi, m, excl, rho);
  };

  const double coarse = value_at(n);
  const double fine = value_at(2 * n);
  if (!std::isfinite(fine) || !std::isfinite(coarse))
    throw std::runtime_error("integrand produced a non-finite value");
  return {fine, std::abs(fine - coarse) / 3.0 + excl_bound};
}

IntegralResult modular_integral(const TestFunction& u, const ExponentField& p,
                                const WeightFn& weight, const Domain& domain,
                                const Grid& grid,
                                const std::optional<SingularFactor>& singular) {
  Integrand f = [&u, &p, &weight](const Vector& x) {
    const double av = std::abs(u.value(x));
    if (av == 0.0) return 0.0;
    double v = std::pow(av, p(x));
    if (weight) v *= weight(x);
    return v;
  };
  return integrate(f, domain, grid, singular);
}

IntegralResult gradient_modular_integral(
    const TestFunction& u, const ExponentField& p, const WeightFn& weight,
    const Vector& x0, double radial_power, const Domain& domain,
    const Grid& grid, const std::optional<SingularFactor>& singular) {
  Integrand f = [&](const Vector& x) {
    const Vector g = u.gradient(x);
    const double pv = p(x);
    double s = 0.0;
    for (int k = 0; k < g.size(); ++k) {
      const double a = std::abs(g[k]);
      if (a > 0.0) s += std::pow(a, pv);
    }
    if (s == 0.0) return 0.0;
    if (radial_power != 0.0) s *= std::pow((x - x0).norm(), radial_power);
    if (weight) s *= weight(x);
    return s;
  };
  return integrate(f, domain, grid, singular);
}

IntegralResult directional_modular_integral(
    const TestFunction& u, const ExponentField& p, const Direction& sigma,
    bool projection_factor, const Vector& x0, const Domain& domain,
    const Grid& grid) {
  Integrand f = [&](const Vector& x) {
    const double d = std::abs(u.directional_derivative(x, sigma));
    if (d == 0.0) return 0.0;
    const double pv = p(x);
    double v = std::pow(d, pv);
    if (projection_factor) {
      const double proj = std::abs((x - x0).dot(sigma.vec()));
      v *= std::pow(proj, pv);
    }
    return v;
  };
  return integrate(f, domain, grid);
}

namespace {

double simpson_shell(const std::function<double(double)>& f, int dim,
                     double r_lo, double r_hi, int m, double at_zero) {
  const double h = (r_hi - r_lo) / m;
  std::vector<double> terms(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const double r = r_lo + i * h;
    const double phi =
        r == 0.0 ? at_zero : f(r) * std::pow(r, dim - 1);
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    terms[static_cast<std::size_t>(i)] = w * phi;
  }
  return h / 3.0 * pairwise_sum(terms);
}

}  // namespace

IntegralResult radial_integrate(const std::function<double(double)>& f,
                                int dim, double r_lo, double r_hi, int n,
                                double at_zero) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("radial bounds require 0 <= r_lo < r_hi");
  int m = std::max(8, n);
  if (m % 2) ++m;
  const double surface = unit_sphere_surface(dim);
  const double coarse = surface * simpson_shell(f, dim, r_lo, r_hi, m, at_zero);
  const double fine =
      surface * simpson_shell(f, dim, r_lo, r_hi, 2 * m, at_zero);
  if (!std::isfinite(fine) || !std::isfinite(coarse))
    throw std::runtime_error("radial integrand produced a non-finite value");
  return {fine, std::abs(fine - coarse) / 15.0};
}

IntegralResult log_term_integral(const ExponentField& p, const TestFunction& u,
                                 const Direction& sigma, const Domain& domain,
                                 const Grid& grid) {
  if (p.kind() != ExponentField::Kind::Radial)
    throw std::invalid_argument("logarithmic term requires a radial exponent");
  const Vector c = p.center();
  Integrand f = [&, c](const Vector& x) {
    const double r = (x - c).norm();
    if (r == 0.0) return 0.0;
    const double dp = p.radial_profile_derivative(r);
    if (dp == 0.0) return 0.0;
    const double av = std::abs(u.value(x));
    if (av == 0.0) return 0.0;  // t^p log t -> 0
    const double proj = (x - c).dot(sigma.vec());
    return dp * proj * proj / r * std::log(av) * std::pow(av, p(x));
  };
  return integrate(f, domain, grid);
}

}  // namespace hp
