#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <span>

namespace hp {

using Vector = Eigen::VectorXd;

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Closed interval on the extended real line. Endpoints may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

/// Deterministic pairwise summation; result is independent of the caller's
/// threading as long as the value order is fixed.
double pairwise_sum(std::span<const double> values);

/// Workers used by cell loops. Never affects numeric output.
void set_worker_count(int workers);
int worker_count();

}  // namespace hp
