#pragma once

#include "hp/functions.hpp"
#include "hp/verifier.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hp {

/// Values on the interior nodes of a tensor grid over a box; zero at every
/// node whose cell is not fully inside the domain (discrete compact
/// support).
struct GridFunction {
  Vector lo;
  Vector hi;
  int n = 0;                    // cells per axis; (n-1)^N interior nodes
  std::vector<double> values;   // full interior lattice, zeros off-domain

  int dimension() const { return static_cast<int>(lo.size()); }
  Vector spacing() const;
};

struct ExtremalResult {
  double estimated_optimal_constant = 0.0;
  double certified_constant = 0.0;
  double sharpness = 0.0;  // estimated / certified
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  std::string descriptor;
  std::vector<std::pair<double, double>> curve;  // (parameter, lhs/rhs)
  GridFunction best;
};

/// Smallest generalized eigenvalue of the finite-difference quadratic
/// forms of a p = 2 instance (stiffness with edge-midpoint weights, diagonal
/// weighted mass), found by inverse power iteration with matrix-free
/// conjugate-gradient solves. The estimated optimal modular constant is
/// 1/lambda_min. Nodes where the mass weight is unbounded are pinned to
/// zero, mirroring the quadrature exclusion.
ExtremalResult optimal_constant_p2(const InequalityInstance& instance, int n,
                                   double tol = 1e-10, int max_iter = 10000);

/// Normalized gradient ascent on the discrete modular ratio LHS/RHS for a
/// constant-exponent instance; backtracking line search, deterministic.
/// Gives a lower bound on the optimal constant.
ExtremalResult ratio_ascent(const InequalityInstance& instance,
                            const TestFunction& start, int n, int steps);

/// Continuum ratio of a parameterized family, one quadrature per member;
/// uses the exact radial reduction when `radial_fast` is set (radial
/// functions and radial weights centered at the instance's x0).
ExtremalResult sharpness_report(const InequalityInstance& instance,
                                std::span<const TestFunction> family,
                                std::span<const double> parameters,
                                bool radial_fast, int radial_n = 100000,
                                const GridSettings& settings = {});

/// Reports for extremal/sharpness results in the shared CSV schema.
std::vector<VerificationReport> extremal_reports(
    const InequalityInstance& instance, const ExtremalResult& result,
    const std::string& id, int grid_n);

}  // namespace hp
