#pragma once

#include "hp/exponents.hpp"
#include "hp/functions.hpp"
#include "hp/geometry.hpp"
#include "hp/quadrature.hpp"
#include "hp/weights.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hp {

enum class InstanceKind {
  DirectionalPoincare,
  GeneralWeighted,
  GammaHardy,
  SharpHardy,
  DualHardyGamma,
  DualHardyPlain,
  ClassicalPoincare,
  VarExpDirectional,
  VarExpRadial,
};

std::string to_string(InstanceKind kind);

/// One inequality with all its parameters. Factories validate the
/// kind-specific hypotheses and throw std::invalid_argument naming the
/// violated one.
class InequalityInstance {
 public:
  static InequalityInstance directional_poincare(Domain domain, double p,
                                                 Direction sigma);
  static InequalityInstance general_weighted(Domain domain, double p,
                                             WeightParams weight,
                                             bool refined_bound = false);
  static InequalityInstance gamma_hardy(Domain domain, double p, double gamma,
                                        Vector x0);
  static InequalityInstance sharp_hardy(Domain domain, double p, Vector x0);
  static InequalityInstance dual_hardy_gamma(Domain domain, double p,
                                             double gamma, Vector x0);
  static InequalityInstance dual_hardy_plain(Domain domain, double p,
                                             Vector x0);
  static InequalityInstance classical_poincare(Domain domain, double p);
  static InequalityInstance varexp_directional(Domain domain,
                                               ExponentField exponent,
                                               Direction sigma);
  static InequalityInstance varexp_radial(Domain domain,
                                          ExponentField exponent,
                                          Direction sigma);

  InstanceKind kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  const ExponentField& exponent() const { return exponent_; }
  double constant_p() const;
  const Vector& x0() const { return x0_; }
  const Direction& sigma() const;
  const WeightParams& weight() const;
  bool refined_bound() const { return refined_; }
  int dimension() const { return domain_.dimension(); }

  InequalityInstance with_label(std::string label) const;
  const std::string& label() const { return label_; }

  InequalityInstance translated(const Vector& t) const;

  std::string describe_params() const;

 private:
  InequalityInstance(InstanceKind kind, Domain domain, ExponentField exponent);

  InstanceKind kind_;
  Domain domain_;
  ExponentField exponent_;
  Vector x0_;
  std::optional<Direction> sigma_;
  std::optional<WeightParams> weight_;
  std::optional<double> gamma_;
  bool refined_ = false;
  std::string label_;

 public:
  std::optional<double> gamma() const { return gamma_; }
};

/// Certified multiplicative constant on the gradient-side modular.
double certified_constant_for(const InequalityInstance& instance);

struct GridSettings {
  int n = 256;
  int n_3d = 64;
  double exclusion_multiplier = 2.0;

  int cells_for(int dim) const { return dim >= 3 ? n_3d : n; }
};

struct VerificationReport {
  std::string instance_id;
  InstanceKind kind{};
  std::string kind_label;  // overrides the kind column when nonempty
  int dim = 0;
  std::string p_descr;
  std::string params;
  IntegralResult lhs;
  IntegralResult rhs;
  double constant = 0.0;
  double ratio = 0.0;
  double tolerance_used = 0.0;
  bool pass = false;
  int grid_n = 0;
  std::string error;  // nonempty when the pair could not be evaluated

  bool evaluated() const { return error.empty(); }
};

/// Deterministic boundary-and-interior sampling of the support against the
/// domain indicator.
bool support_contained(const Domain& domain, const TestFunction& u);

/// Computes both modulars, the certified constant and the verdict
/// ratio <= 1 + tolerance, with the tolerance combining both quadrature
/// error estimates. Throws on violated preconditions (support not inside
/// the domain; sup |u| > 1 for the radial variable-exponent kind).
VerificationReport verify(const InequalityInstance& instance,
                          const TestFunction& u,
                          const GridSettings& settings = {});

/// Cartesian product of instances and functions in row-major order.
/// Individual failures are recorded in the report, never thrown.
std::vector<VerificationReport> sweep(std::span<const InequalityInstance> instances,
                                      std::span<const TestFunction> functions,
                                      const GridSettings& settings = {});

std::string csv_header();
std::string csv_row(const VerificationReport& report);

}  // namespace hp
