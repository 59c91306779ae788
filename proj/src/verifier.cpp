#include "hp/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hp {

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::DirectionalPoincare: return "directional_poincare";
    case InstanceKind::GeneralWeighted: return "general_weighted";
    case InstanceKind::GammaHardy: return "gamma_hardy";
    case InstanceKind::SharpHardy: return "sharp_hardy";
    case InstanceKind::DualHardyGamma: return "dual_hardy_gamma";
    case InstanceKind::DualHardyPlain: return "dual_hardy_plain";
    case InstanceKind::ClassicalPoincare: return "classical_poincare";
    case InstanceKind::VarExpDirectional: return "varexp_directional";
    case InstanceKind::VarExpRadial: return "varexp_radial";
  }
  return "unknown";
}

// ------------------------------------------------------ InequalityInstance

InequalityInstance::InequalityInstance(InstanceKind kind, Domain domain,
                                       ExponentField exponent)
    : kind_(kind),
      domain_(std::move(domain)),
      exponent_(std::move(exponent)),
      x0_(Vector::Zero(domain_.dimension())) {}

namespace {

void require_p_ge1(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("inequality requires 1 <= p < inf");
}

void require_bounded_along(const Domain& domain, const Direction& sigma) {
  if (!domain.bounded_along(sigma))
    throw std::invalid_argument(
        "inequality requires the domain bounded along sigma");
}

void require_point(const Vector& x0, int dim) {
  if (x0.size() != dim || !x0.allFinite())
    throw std::invalid_argument("x0 must be a finite point of the right dimension");
}

}  // namespace

InequalityInstance InequalityInstance::directional_poincare(Domain domain,
                                                            double p,
                                                            Direction sigma) {
  require_p_ge1(p);
  if (sigma.dimension() != domain.dimension())
    throw std::invalid_argument("sigma dimension mismatch");
  require_bounded_along(domain, sigma);
  InequalityInstance inst(InstanceKind::DirectionalPoincare, std::move(domain),
                          ExponentField::constant(p));
  inst.sigma_ = std::move(sigma);
  return inst;
}

InequalityInstance InequalityInstance::general_weighted(Domain domain, double p,
                                                        WeightParams weight,
                                                        bool refined_bound) {
  require_p_ge1(p);
  if (weight.dimension() != domain.dimension())
    throw std::invalid_argument("weight dimension mismatch");
  InequalityInstance inst(InstanceKind::GeneralWeighted, std::move(domain),
                          ExponentField::constant(p));
  inst.x0_ = weight.x0;
  inst.weight_ = std::move(weight);
  inst.refined_ = refined_bound;
  return inst;
}

InequalityInstance InequalityInstance::gamma_hardy(Domain domain, double p,
                                                   double gamma, Vector x0) {
  require_p_ge1(p);
  require_point(x0, domain.dimension());
  const LimitWeightParams limit(gamma, LimitWeightMode::Singular,
                                domain.dimension());
  InequalityInstance inst(InstanceKind::GammaHardy, std::move(domain),
                          ExponentField::constant(p));
  inst.x0_ = std::move(x0);
  inst.gamma_ = limit.gamma;
  return inst;
}

InequalityInstance InequalityInstance::sharp_hardy(Domain domain, double p,
                                                   Vector x0) {
  require_p_ge1(p);
  require_point(x0, domain.dimension());
  if (!(p < domain.dimension()))
    throw std::invalid_argument("inequality requires 1 <= p < N");
  InequalityInstance inst(InstanceKind::SharpHardy, std::move(domain),
                          ExponentField::constant(p));
  inst.x0_ = std::move(x0);
  return inst;
}

InequalityInstance InequalityInstance::dual_hardy_gamma(Domain domain, double p,
                                                        double gamma,
                                                        Vector x0) {
  require_p_ge1(p);
  require_point(x0, domain.dimension());
  const LimitWeightParams limit(gamma, LimitWeightMode::Dual,
                                domain.dimension());
  InequalityInstance inst(InstanceKind::DualHardyGamma, std::move(domain),
                          ExponentField::constant(p));
  inst.x0_ = std::move(x0);
  inst.gamma_ = limit.gamma;
  return inst;
}

InequalityInstance InequalityInstance::dual_hardy_plain(Domain domain, double p,
                                                        Vector x0) {
  require_p_ge1(p);
  require_point(x0, domain.dimension());
  InequalityInstance inst(InstanceKind::DualHardyPlain, std::move(domain),
                          ExponentField::constant(p));
  inst.x0_ = std::move(x0);
  return inst;
}

InequalityInstance InequalityInstance::classical_poincare(Domain domain,
                                                          double p) {
  require_p_ge1(p);
  if (!domain.bounded())
    throw std::invalid_argument("inequality requires a bounded domain");
  return InequalityInstance(InstanceKind::ClassicalPoincare, std::move(domain),
                            ExponentField::constant(p));
}

InequalityInstance InequalityInstance::varexp_directional(Domain domain,
                                                          ExponentField exponent,
                                                          Direction sigma) {
  if (sigma.dimension() != domain.dimension())
    throw std::invalid_argument("sigma dimension mismatch");
  if (!exponent.constant_along(sigma))
    throw std::invalid_argument(
        "inequality requires the exponent constant along sigma");
  require_bounded_along(domain, sigma);
  InequalityInstance inst(InstanceKind::VarExpDirectional, std::move(domain),
                          std::move(exponent));
  inst.sigma_ = std::move(sigma);
  return inst;
}

InequalityInstance InequalityInstance::varexp_radial(Domain domain,
                                                     ExponentField exponent,
                                                     Direction sigma) {
  if (sigma.dimension() != domain.dimension())
    throw std::invalid_argument("sigma dimension mismatch");
  if (exponent.kind() != ExponentField::Kind::Radial)
    throw std::invalid_argument("inequality requires a radial exponent");
  if (exponent.monotonicity() == ExponentField::Monotonicity::Increasing)
    throw std::invalid_argument(
        "inequality requires a non-increasing radial exponent profile");
  require_bounded_along(domain, sigma);
  InequalityInstance inst(InstanceKind::VarExpRadial, std::move(domain),
                          std::move(exponent));
  inst.x0_ = inst.exponent_.center();
  inst.sigma_ = std::move(sigma);
  return inst;
}

double InequalityInstance::constant_p() const {
  return exponent_.constant_value();
}

const Direction& InequalityInstance::sigma() const {
  if (!sigma_) throw std::logic_error("instance has no direction");
  return *sigma_;
}

const WeightParams& InequalityInstance::weight() const {
  if (!weight_) throw std::logic_error("instance has no weight");
  return *weight_;
}

InequalityInstance InequalityInstance::with_label(std::string label) const {
  InequalityInstance copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

InequalityInstance InequalityInstance::translated(const Vector& t) const {
  InequalityInstance copy = *this;
  copy.domain_ = domain_.translated(t);
  copy.exponent_ = exponent_.translated(t);
  copy.x0_ = x0_ + t;
  if (weight_)
    copy.weight_ = WeightParams(weight_->lambda, weight_->alpha, weight_->beta,
                                weight_->x0 + t);
  return copy;
}

namespace {

std::string point_str(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < v.size(); ++k) os << (k ? " " : "") << v[k];
  os << ")";
  return os.str();
}

}  // namespace

std::string InequalityInstance::describe_params() const {
  std::ostringstream os;
  os << "domain=" << domain_.describe();
  if (sigma_) os << ";sigma=" << point_str(sigma_->vec());
  if (weight_)
    os << ";lambda=" << weight_->lambda << ";alpha=" << weight_->alpha
       << ";beta=" << weight_->beta;
  if (gamma_) os << ";gamma=" << *gamma_;
  switch (kind_) {
    case InstanceKind::GeneralWeighted:
    case InstanceKind::GammaHardy:
    case InstanceKind::SharpHardy:
    case InstanceKind::DualHardyGamma:
    case InstanceKind::DualHardyPlain:
      os << ";x0=" << point_str(x0_);
      break;
    default:
      break;
  }
  if (refined_) os << ";refined=1";
  if (domain_.is_union() &&
      (kind_ == InstanceKind::DirectionalPoincare ||
       kind_ == InstanceKind::VarExpDirectional))
    os << ";note=projection-hull";
  return os.str();
}

// ------------------------------------------------------------------ verify

double certified_constant_for(const InequalityInstance& inst) {
  switch (inst.kind()) {
    case InstanceKind::DirectionalPoincare: {
      const double p = inst.constant_p();
      const double c = directional_constant(inst.domain(), inst.sigma());
      return std::pow(p * c, p);
    }
    case InstanceKind::GeneralWeighted: {
      const double p = inst.constant_p();
      return inst.refined_bound()
                 ? general_weighted_constant(p, inst.weight(), inst.domain())
                 : general_weighted_constant(p, inst.weight());
    }
    case InstanceKind::GammaHardy:
      return gamma_hardy_constant(inst.constant_p(), *inst.gamma(),
                                  inst.dimension());
    case InstanceKind::SharpHardy:
      return sharp_hardy_constant(inst.constant_p(), inst.dimension());
    case InstanceKind::DualHardyGamma:
    case InstanceKind::DualHardyPlain:
      return dual_hardy_constant(inst.constant_p(), inst.dimension());
    case InstanceKind::ClassicalPoincare:
      return classical_poincare_constant(inst.constant_p(), inst.dimension(),
                                         circumradius(inst.domain()));
    case InstanceKind::VarExpDirectional:
    case InstanceKind::VarExpRadial:
      return directional_modular_constant(inst.exponent(), inst.domain(),
                                          inst.sigma());
  }
  throw std::logic_error("unknown instance kind");
}

namespace {

// Deterministic samples of the support boundary (plus a few interior
// probes) for the containment precondition.
std::vector<Vector> support_samples(const Domain& support) {
  std::vector<Vector> pts;
  const int dim = support.dimension();
  switch (support.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus: {
      const Vector& c = support.center();
      std::vector<double> radii{support.outer_radius()};
      if (support.shape_kind() == Domain::ShapeKind::Annulus)
        radii.push_back(support.inner_radius());
      for (double r : radii) {
        if (dim == 1) {
          for (double s : {-1.0, 1.0}) {
            Vector x = c;
            x[0] += s * r;
            pts.push_back(x);
          }
        } else if (dim == 2) {
          for (int i = 0; i < 64; ++i) {
            const double a = 2.0 * std::numbers::pi * i / 64.0;
            Vector x = c;
            x[0] += r * std::cos(a);
            x[1] += r * std::sin(a);
            pts.push_back(x);
          }
        } else {
          // Fibonacci sphere
          const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
          for (int i = 0; i < 128; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / 128.0;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * i;
            Vector x = c;
            x[0] += r * rho * std::cos(a);
            x[1] += r * rho * std::sin(a);
            x[2] += r * z;
            pts.push_back(x);
          }
        }
      }
      // interior probes
      if (support.shape_kind() == Domain::ShapeKind::Ball) {
        pts.push_back(c);
        const std::size_t boundary = pts.size() - 1;
        for (std::size_t i = 0; i + 1 < boundary; i += 7)
          pts.push_back(0.5 * (pts[i] + c));
      }
      return pts;
    }
    case Domain::ShapeKind::Box: {
      auto [lo, hi] = support.bounding_box();
      const int per_axis = dim == 1 ? 1 : dim == 2 ? 9 : 5;
      for (int face_axis = 0; face_axis < dim; ++face_axis) {
        for (double side : {0.0, 1.0}) {
          std::vector<int> counter(dim, 0);
          bool done = false;
          while (!done) {
            Vector x(dim);
            for (int k = 0; k < dim; ++k) {
              if (k == face_axis) {
                x[k] = side == 0.0 ? lo[k] : hi[k];
              } else {
                x[k] = per_axis == 1
                           ? 0.5 * (lo[k] + hi[k])
                           : lo[k] + (hi[k] - lo[k]) * counter[k] /
                                         double(per_axis - 1);
              }
            }
            pts.push_back(x);
            int k = 0;
            for (; k < dim; ++k) {
              if (k == face_axis) continue;
              if (++counter[k] < per_axis) break;
              counter[k] = 0;
            }
            done = k == dim;
          }
        }
      }
      pts.push_back(0.5 * (lo + hi));
      return pts;
    }
    case Domain::ShapeKind::Union: {
      for (const Domain& m : support.members())
        for (Vector& x : support_samples(m)) pts.push_back(std::move(x));
      return pts;
    }
    case Domain::ShapeKind::Strip:
      throw std::invalid_argument(
          "support containment check needs a compact support shape");
  }
  return pts;
}

WeightFn radial_power_weight(Vector x0, double power) {
  return [x0 = std::move(x0), power](const Vector& x) {
    return std::pow((x - x0).norm(), power);
  };
}

}  // namespace

bool support_contained(const Domain& domain, const TestFunction& u) {
  for (const Vector& x : support_samples(u.support())) {
    const double tol = 1e-9 * (1.0 + x.norm());
    if (!domain.contains(x, tol)) return false;
  }
  return true;
}

VerificationReport verify(const InequalityInstance& inst, const TestFunction& u,
                          const GridSettings& settings) {
  if (u.dimension() != inst.dimension())
    throw std::invalid_argument("function/instance dimension mismatch");

  if (!support_contained(inst.domain(), u))
    throw std::invalid_argument("support of '" + u.name() +
                                "' is not contained in the domain");
  if (inst.kind() == InstanceKind::VarExpRadial &&
      u.sup_norm_bound() > 1.0 + 1e-12)
    throw std::invalid_argument(
        "radial variable-exponent inequality requires sup|u| <= 1");

  const int dim = inst.dimension();
  const int n = settings.cells_for(dim);
  const Grid base =
      make_grid(inst.domain(), u.support(), n, settings.exclusion_multiplier);
  const ExponentField& p_field = inst.exponent();
  const Vector& x0 = inst.x0();

  IntegralResult lhs, rhs;
  switch (inst.kind()) {
    case InstanceKind::DirectionalPoincare:
    case InstanceKind::VarExpDirectional:
    case InstanceKind::VarExpRadial: {
      lhs = modular_integral(u, p_field, nullptr, inst.domain(), base);
      rhs = directional_modular_integral(u, p_field, inst.sigma(), false, x0,
                                         inst.domain(), base);
      break;
    }
    case InstanceKind::ClassicalPoincare: {
      lhs = modular_integral(u, p_field, nullptr, inst.domain(), base);
      rhs = gradient_modular_integral(u, p_field, nullptr, x0, 0.0,
                                      inst.domain(), base);
      break;
    }
    case InstanceKind::GeneralWeighted: {
      const WeightParams& w = inst.weight();
      WeightFn wf = [&w](const Vector& x) { return weight_value(w, x); };
      lhs = modular_integral(u, p_field, wf, inst.domain(), base);
      rhs = gradient_modular_integral(u, p_field, wf, x0, inst.constant_p(),
                                      inst.domain(), base);
      break;
    }
    case InstanceKind::GammaHardy: {
      const double p = inst.constant_p();
      const double gamma = *inst.gamma();
      Grid lhs_grid = base;
      lhs_grid.singular_point = x0;
      lhs = modular_integral(
          u, p_field, radial_power_weight(x0, -gamma), inst.domain(), lhs_grid,
          SingularFactor{gamma, std::pow(u.sup_norm_bound(), p)});
      if (gamma > p) {
        Grid rhs_grid = base;
        rhs_grid.singular_point = x0;
        rhs = gradient_modular_integral(
            u, p_field, nullptr, x0, p - gamma, inst.domain(), rhs_grid,
            SingularFactor{gamma - p,
                           dim * std::pow(u.gradient_sup_bound(), p)});
      } else {
        rhs = gradient_modular_integral(u, p_field, nullptr, x0, p - gamma,
                                        inst.domain(), base);
      }
      break;
    }
    case InstanceKind::SharpHardy: {
      const double p = inst.constant_p();
      Grid lhs_grid = base;
      lhs_grid.singular_point = x0;
      lhs = modular_integral(
          u, p_field, radial_power_weight(x0, -p), inst.domain(), lhs_grid,
          SingularFactor{p, std::pow(u.sup_norm_bound(), p)});
      rhs = gradient_modular_integral(u, p_field, nullptr, x0, 0.0,
                                      inst.domain(), base);
      break;
    }
    case InstanceKind::DualHardyGamma: {
      const double p = inst.constant_p();
      const double gamma = *inst.gamma();
      lhs = modular_integral(u, p_field, radial_power_weight(x0, gamma),
                             inst.domain(), base);
      rhs = gradient_modular_integral(u, p_field, nullptr, x0, p + gamma,
                                      inst.domain(), base);
      break;
    }
    case InstanceKind::DualHardyPlain: {
      const double p = inst.constant_p();
      lhs = modular_integral(u, p_field, nullptr, inst.domain(), base);
      rhs = gradient_modular_integral(u, p_field, nullptr, x0, p,
                                      inst.domain(), base);
      break;
    }
  }

  VerificationReport report;
  report.instance_id = inst.label().empty() ? to_string(inst.kind())
                                            : inst.label();
  report.kind = inst.kind();
  report.dim = dim;
  report.p_descr = p_field.describe();
  report.params = inst.describe_params() + ";u=" + u.name();
  report.lhs = lhs;
  report.rhs = rhs;
  report.constant = certified_constant_for(inst);
  report.grid_n = n;

  const double denom = report.constant * rhs.value;
  if (lhs.value == 0.0) {
    report.ratio = 0.0;
    report.tolerance_used = 1e-9;
    report.pass = true;
  } else if (denom <= 0.0) {
    report.ratio = inf;
    report.tolerance_used = 0.0;
    report.pass = false;
  } else {
    report.ratio = lhs.value / denom;
    report.tolerance_used =
        (lhs.error_estimate + report.constant * rhs.error_estimate) / denom +
        1e-9;
    report.pass = report.ratio <= 1.0 + report.tolerance_used;
  }
  return report;
}

std::vector<VerificationReport> sweep(
    std::span<const InequalityInstance> instances,
    std::span<const TestFunction> functions, const GridSettings& settings) {
  std::vector<VerificationReport> reports;
  reports.reserve(instances.size() * functions.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t j = 0; j < functions.size(); ++j) {
      try {
        VerificationReport r = verify(instances[i], functions[j], settings);
        std::ostringstream id;
        id << (instances[i].label().empty() ? to_string(instances[i].kind())
                                            : instances[i].label())
           << "#" << i << "x" << j;
        r.instance_id = id.str();
        reports.push_back(std::move(r));
      } catch (const std::exception& e) {
        VerificationReport r;
        std::ostringstream id;
        id << (instances[i].label().empty() ? to_string(instances[i].kind())
                                            : instances[i].label())
           << "#" << i << "x" << j;
        r.instance_id = id.str();
        r.kind = instances[i].kind();
        r.dim = instances[i].dimension();
        r.pass = false;
        r.error = e.what();
        reports.push_back(std::move(r));
      }
    }
  }
  return reports;
}

// --------------------------------------------------------------------- CSV

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_header() {
  return "instance_id,kind,N,p_descr,params,lhs,lhs_err,rhs,rhs_err,constant,"
         "ratio,pass,grid_n";
}

std::string csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.instance_id << ','
     << (r.kind_label.empty() ? to_string(r.kind) : r.kind_label) << ','
     << r.dim << ',' << r.p_descr << ','
     << (r.error.empty() ? r.params : r.params + ";error=" + r.error) << ','
     << fmt(r.lhs.value) << ',' << fmt(r.lhs.error_estimate) << ','
     << fmt(r.rhs.value) << ',' << fmt(r.rhs.error_estimate) << ','
     << fmt(r.constant) << ',' << fmt(r.ratio) << ','
     << (r.pass ? "true" : "false") << ',' << r.grid_n;
  return os.str();
}

}  // namespace hp
