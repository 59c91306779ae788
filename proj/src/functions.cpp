#include "hp/functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hp {

namespace {

double mollifier_1d(double y) {  // exp(-1/(1-y^2)) on (-1,1)
  const double s = y * y;
  if (s >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s));
}

double mollifier_1d_slope(double y) {
  const double s = y * y;
  if (s >= 1.0) return 0.0;
  const double d = 1.0 - s;
  return -2.0 * y / (d * d) * std::exp(-1.0 / d);
}

double sampled_max(const std::function<double(double)>& f, double lo, double hi,
                   int samples) {
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / double(samples);
    best = std::max(best, std::abs(f(t)));
  }
  return best;
}

}  // namespace

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double smooth_step_slope(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  const double sum = a + b;
  return a * b * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s))) / (sum * sum);
}

struct TestFunction::Impl {
  explicit Impl(Domain s) : support(std::move(s)) {}

  std::string name;
  Domain support;
  double sup_bound = 0.0;
  double grad_bound = 0.0;
  ValueFn value;
  GradientFn gradient;
  ProfileFn radial_value;  // empty unless radial about the origin
  ProfileFn radial_slope;
};

TestFunction::TestFunction(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

TestFunction TestFunction::custom(std::string name, Domain support,
                                  double sup_bound, double gradient_bound,
                                  ValueFn value, GradientFn gradient) {
  auto impl = std::make_shared<Impl>(std::move(support));
  impl->name = std::move(name);
  impl->sup_bound = sup_bound;
  impl->grad_bound = gradient_bound;
  impl->value = std::move(value);
  impl->gradient = std::move(gradient);
  return TestFunction(std::move(impl));
}

double TestFunction::value(const Vector& x) const { return impl_->value(x); }
Vector TestFunction::gradient(const Vector& x) const {
  return impl_->gradient(x);
}

double TestFunction::directional_derivative(const Vector& x,
                                            const Direction& sigma) const {
  return impl_->gradient(x).dot(sigma.vec());
}

const Domain& TestFunction::support() const { return impl_->support; }
int TestFunction::dimension() const { return impl_->support.dimension(); }
const std::string& TestFunction::name() const { return impl_->name; }
double TestFunction::sup_norm_bound() const { return impl_->sup_bound; }
double TestFunction::gradient_sup_bound() const { return impl_->grad_bound; }

bool TestFunction::radial() const {
  return static_cast<bool>(impl_->radial_value);
}

double TestFunction::radial_value(double r) const {
  return impl_->radial_value(r);
}

double TestFunction::radial_slope(double r) const {
  return impl_->radial_slope(r);
}

TestFunction TestFunction::scaled_by(double factor) const {
  auto base = impl_;
  auto impl = std::make_shared<Impl>(base->support);
  impl->name = base->name + "*scaled";
  impl->sup_bound = base->sup_bound * std::abs(factor);
  impl->grad_bound = base->grad_bound * std::abs(factor);
  impl->value = [base, factor](const Vector& x) {
    return factor * base->value(x);
  };
  impl->gradient = [base, factor](const Vector& x) {
    return Vector(factor * base->gradient(x));
  };
  if (base->radial_value) {
    impl->radial_value = [base, factor](double r) {
      return factor * base->radial_value(r);
    };
    impl->radial_slope = [base, factor](double r) {
      return factor * base->radial_slope(r);
    };
  }
  return TestFunction(std::move(impl));
}

TestFunction TestFunction::translated(const Vector& t) const {
  auto base = impl_;
  const Vector shift = t;
  auto impl = std::make_shared<Impl>(base->support.translated(t));
  impl->name = base->name + "+shift";
  impl->sup_bound = base->sup_bound;
  impl->grad_bound = base->grad_bound;
  impl->value = [base, shift](const Vector& x) {
    return base->value(x - shift);
  };
  impl->gradient = [base, shift](const Vector& x) {
    return base->gradient(x - shift);
  };
  return TestFunction(std::move(impl));
}

TestFunction TestFunction::dilated(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("dilation factor must be > 0");
  auto base = impl_;
  auto impl = std::make_shared<Impl>(base->support.scaled(s));
  impl->name = base->name + "*dilated";
  impl->sup_bound = base->sup_bound;
  impl->grad_bound = base->grad_bound / s;
  impl->value = [base, s](const Vector& x) { return base->value(x / s); };
  impl->gradient = [base, s](const Vector& x) {
    return Vector(base->gradient(x / s) / s);
  };
  if (base->radial_value) {
    impl->radial_value = [base, s](double r) {
      return base->radial_value(r / s);
    };
    impl->radial_slope = [base, s](double r) {
      return base->radial_slope(r / s) / s;
    };
  }
  return TestFunction(std::move(impl));
}

TestFunction bump(const Vector& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump requires radius > 0");
  if (center.size() == 0 || !center.allFinite())
    throw std::invalid_argument("bump center must be finite");
  const int dim = static_cast<int>(center.size());
  auto impl = std::make_shared<TestFunction::Impl>(Domain::ball(center, radius));
  impl->name = "bump";
  impl->sup_bound = std::exp(-1.0);
  const Vector c = center;
  impl->value = [c, radius](const Vector& x) {
    const double s = (x - c).squaredNorm() / (radius * radius);
    if (s >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s));
  };
  impl->gradient = [c, radius, dim](const Vector& x) {
    const Vector y = (x - c) / radius;
    const double s = y.squaredNorm();
    if (s >= 1.0) return Vector(Vector::Zero(dim));
    const double d = 1.0 - s;
    return Vector(-2.0 * std::exp(-1.0 / d) / (radius * d * d) * y);
  };
  auto profile = [radius](double r) { return mollifier_1d(r / radius); };
  auto slope = [radius](double r) {
    return mollifier_1d_slope(r / radius) / radius;
  };
  impl->grad_bound = 1.0001 * sampled_max(slope, 0.0, radius, 100000);
  if (center.isZero(0.0)) {
    impl->radial_value = profile;
    impl->radial_slope = slope;
  }
  return TestFunction(std::move(impl));
}

TestFunction tensor_bump(const Domain& box) {
  if (box.shape_kind() != Domain::ShapeKind::Box || !box.bounded())
    throw std::invalid_argument("tensor bump requires a finite box");
  auto [lo, hi] = box.bounding_box();
  const int dim = static_cast<int>(lo.size());
  const Vector mid = 0.5 * (lo + hi);
  const Vector halfw = 0.5 * (hi - lo);
  auto impl = std::make_shared<TestFunction::Impl>(box);
  impl->name = "tensor_bump";
  impl->sup_bound = std::exp(-double(dim));
  impl->value = [mid, halfw, dim](const Vector& x) {
    double v = 1.0;
    for (int k = 0; k < dim; ++k) {
      const double b = mollifier_1d((x[k] - mid[k]) / halfw[k]);
      if (b == 0.0) return 0.0;
      v *= b;
    }
    return v;
  };
  impl->gradient = [mid, halfw, dim](const Vector& x) {
    Vector b(dim), db(dim);
    for (int k = 0; k < dim; ++k) {
      const double y = (x[k] - mid[k]) / halfw[k];
      b[k] = mollifier_1d(y);
      db[k] = mollifier_1d_slope(y) / halfw[k];
    }
    Vector g = Vector::Zero(dim);
    for (int k = 0; k < dim; ++k) {
      double prod = db[k];
      for (int j = 0; j < dim; ++j)
        if (j != k) prod *= b[j];
      g[k] = prod;
    }
    return g;
  };
  const double peak1d = std::exp(-1.0);
  double worst = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double wk = halfw[k];
    const double slope_max =
        sampled_max([&](double y) { return mollifier_1d_slope(y); }, 0.0, 1.0,
                    100000) /
        wk;
    worst = std::max(
        worst, slope_max * std::pow(peak1d, dim - 1));
  }
  impl->grad_bound = 1.0001 * worst * std::sqrt(double(dim));
  return TestFunction(std::move(impl));
}

TestFunction hardy_family(int dim, double p, double eps, double delta,
                          double outer_radius) {
  if (!(p >= 1.0) || !(p < double(dim)))
    throw std::invalid_argument("family requires 1 <= p < N");
  if (!(delta > 0.0) || !(delta < outer_radius))
    throw std::invalid_argument("family requires 0 < delta < R");
  if (!(eps >= 0.0)) throw std::invalid_argument("family requires eps >= 0");

  const double e = -(double(dim) - p) / p + eps;
  const double R = outer_radius;
  auto g = [e](double r) { return std::pow(r, e); };
  auto eta = [R](double r) {
    const double t = r / R;
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    return smooth_step(2.0 * (1.0 - t));
  };
  auto eta_slope = [R](double r) {
    const double t = r / R;
    if (t <= 0.5 || t >= 1.0) return 0.0;
    return -2.0 * smooth_step_slope(2.0 * (1.0 - t)) / R;
  };
  auto G = [=](double r) { return g(std::max(r, delta)) * eta(r); };
  auto Gp = [=](double r) {
    double out = g(std::max(r, delta)) * eta_slope(r);
    if (r > delta) out += e * std::pow(r, e - 1.0) * eta(r);
    return out;
  };

  auto impl = std::make_shared<TestFunction::Impl>(Domain::ball(Vector::Zero(dim), R));
  impl->name = "hardy_family";
  impl->sup_bound = std::max(g(delta), g(R));
  impl->value = [G, dim](const Vector& x) { return G(x.norm()); };
  impl->gradient = [G, Gp, dim](const Vector& x) {
    const double r = x.norm();
    if (r == 0.0) return Vector(Vector::Zero(dim));
    return Vector(Gp(r) / r * x);
  };
  impl->radial_value = G;
  impl->radial_slope = Gp;
  impl->grad_bound = 1.01 * sampled_max(Gp, 0.0, R, 200000);
  return TestFunction(std::move(impl));
}

TestFunction clamp_unit(const TestFunction& u) {
  const double bound = u.sup_norm_bound();
  if (bound <= 1.0) return u;
  return u.scaled_by(1.0 / bound);
}

}  // namespace hp
