#include "hp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace hp {

namespace {

struct Box {
  Vector lo, hi;
};
struct Ball {
  Vector center;
  double radius;
};
struct Annulus {
  Vector center;
  double inner, outer;
};
struct Strip {
  Vector normal;  // unit
  double a, b;
};
using Union = std::vector<Domain>;

Vector perp_part(const Vector& v, const Vector& unit_sigma) {
  return v - v.dot(unit_sigma) * unit_sigma;
}

std::vector<Vector> box_corners(const Vector& lo, const Vector& hi) {
  const int dim = static_cast<int>(lo.size());
  std::vector<Vector> corners;
  corners.reserve(std::size_t{1} << dim);
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vector c(dim);
    for (int k = 0; k < dim; ++k) c[k] = (mask >> k) & 1 ? hi[k] : lo[k];
    corners.push_back(std::move(c));
  }
  return corners;
}

}  // namespace

struct Domain::Shape {
  std::variant<Box, Ball, Annulus, Strip, Union> v;
};

// ---------------------------------------------------------------- Direction

Direction::Direction(Vector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw std::invalid_argument("direction must be nonempty");
  const double n = v_.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("direction must have positive finite norm");
  v_ /= n;
}

std::optional<int> Direction::axis(double tol) const {
  for (int k = 0; k < v_.size(); ++k) {
    if (std::abs(std::abs(v_[k]) - 1.0) > tol) continue;
    bool clean = true;
    for (int j = 0; j < v_.size(); ++j)
      if (j != k && std::abs(v_[j]) > tol) clean = false;
    if (clean) return k;
  }
  return std::nullopt;
}

bool Direction::parallel_to(const Direction& other, double tol) const {
  if (other.dimension() != dimension()) return false;
  return std::abs(std::abs(v_.dot(other.v_)) - 1.0) <= tol;
}

Direction axis_direction(int dim, int axis) {
  Vector v = Vector::Zero(dim);
  v[axis] = 1.0;
  return Direction(std::move(v));
}

// ------------------------------------------------------------------- Domain

Domain::Domain(int dim, std::shared_ptr<const Shape> shape)
    : dim_(dim), shape_(std::move(shape)) {}

Domain Domain::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw std::invalid_argument("box bounds must be nonempty and congruent");
  for (int k = 0; k < lo.size(); ++k)
    if (!(lo[k] < hi[k]))
      throw std::invalid_argument("box requires lo < hi on every axis");
  const int dim = static_cast<int>(lo.size());
  return Domain(dim, std::make_shared<Shape>(
                         Shape{Box{std::move(lo), std::move(hi)}}));
}

Domain Domain::ball(Vector center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball requires radius > 0");
  if (!center.allFinite())
    throw std::invalid_argument("ball center must be finite");
  const int dim = static_cast<int>(center.size());
  return Domain(dim, std::make_shared<Shape>(
                         Shape{Ball{std::move(center), radius}}));
}

Domain Domain::annulus(Vector center, double inner, double outer) {
  if (!(inner > 0.0) || !(inner < outer))
    throw std::invalid_argument("annulus requires 0 < inner < outer");
  if (!center.allFinite())
    throw std::invalid_argument("annulus center must be finite");
  const int dim = static_cast<int>(center.size());
  return Domain(dim, std::make_shared<Shape>(
                         Shape{Annulus{std::move(center), inner, outer}}));
}

Domain Domain::strip(Direction normal, double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("strip requires finite bounds a < b");
  const int dim = normal.dimension();
  return Domain(dim, std::make_shared<Shape>(Shape{Strip{normal.vec(), a, b}}));
}

Domain Domain::unite(std::vector<Domain> members) {
  if (members.empty()) throw std::invalid_argument("union must be nonempty");
  const int dim = members.front().dimension();
  for (const Domain& m : members)
    if (m.dimension() != dim)
      throw std::invalid_argument("union members must share the dimension");
  return Domain(dim, std::make_shared<Shape>(Shape{std::move(members)}));
}

Domain::ShapeKind Domain::shape_kind() const {
  return std::visit(
      [](const auto& s) -> ShapeKind {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) return ShapeKind::Box;
        if constexpr (std::is_same_v<T, Ball>) return ShapeKind::Ball;
        if constexpr (std::is_same_v<T, Annulus>) return ShapeKind::Annulus;
        if constexpr (std::is_same_v<T, Strip>) return ShapeKind::Strip;
        return ShapeKind::Union;
      },
      shape_->v);
}

const std::vector<Domain>& Domain::members() const {
  return std::get<Union>(shape_->v);
}

const Vector& Domain::center() const {
  if (const auto* b = std::get_if<Ball>(&shape_->v)) return b->center;
  if (const auto* a = std::get_if<Annulus>(&shape_->v)) return a->center;
  throw std::logic_error("center() requires a ball or annulus");
}

double Domain::outer_radius() const {
  if (const auto* b = std::get_if<Ball>(&shape_->v)) return b->radius;
  if (const auto* a = std::get_if<Annulus>(&shape_->v)) return a->outer;
  throw std::logic_error("outer_radius() requires a ball or annulus");
}

double Domain::inner_radius() const {
  if (std::holds_alternative<Ball>(shape_->v)) return 0.0;
  if (const auto* a = std::get_if<Annulus>(&shape_->v)) return a->inner;
  throw std::logic_error("inner_radius() requires a ball or annulus");
}

bool Domain::contains(const Vector& x, double tol) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (int k = 0; k < dim_; ++k)
            if (!(x[k] > s.lo[k] - tol && x[k] < s.hi[k] + tol)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return (x - s.center).norm() < s.radius + tol;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          const double d = (x - s.center).norm();
          return d > s.inner - tol && d < s.outer + tol;
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double t = x.dot(s.normal);
          return t > s.a - tol && t < s.b + tol;
        } else {
          for (const Domain& m : s)
            if (m.contains(x, tol)) return true;
          return false;
        }
      },
      shape_->v);
}

double Domain::support(const Direction& sigma) const {
  const Vector& d = sigma.vec();
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          double acc = 0.0;
          for (int k = 0; k < dim_; ++k) {
            if (d[k] == 0.0) continue;
            const double term = d[k] > 0.0 ? s.hi[k] * d[k] : s.lo[k] * d[k];
            if (std::isinf(term)) return inf;
            acc += term;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.center.dot(d) + s.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return s.center.dot(d) + s.outer;
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double dot = d.dot(s.normal);
          const double perp = perp_part(d, s.normal).norm();
          if (perp > 1e-12) return inf;
          return std::max(dot * s.a, dot * s.b);
        } else {
          double m = -inf;
          for (const Domain& member : s) m = std::max(m, member.support(sigma));
          return m;
        }
      },
      shape_->v);
}

std::pair<Vector, Vector> Domain::bounding_box() const {
  Vector lo(dim_), hi(dim_);
  for (int k = 0; k < dim_; ++k) {
    const Direction e = axis_direction(dim_, k);
    hi[k] = support(e);
    lo[k] = -support(Direction(-e.vec()));
  }
  return {lo, hi};
}

bool Domain::bounded() const {
  auto [lo, hi] = bounding_box();
  return lo.allFinite() && hi.allFinite();
}

bool Domain::bounded_along(const Direction& sigma) const {
  return projection_interval(*this, sigma).finite();
}

Interval Domain::distance_range(const Vector& x0) const {
  return std::visit(
      [&](const auto& s) -> Interval {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          double near2 = 0.0, far2 = 0.0;
          for (int k = 0; k < dim_; ++k) {
            const double below = s.lo[k] - x0[k];
            const double above = x0[k] - s.hi[k];
            const double n = std::max({0.0, below, above});
            near2 += n * n;
            const double f =
                std::max(std::abs(x0[k] - s.lo[k]), std::abs(x0[k] - s.hi[k]));
            far2 += f * f;
          }
          return {std::sqrt(near2), std::sqrt(far2)};
        } else if constexpr (std::is_same_v<T, Ball>) {
          const double d = (x0 - s.center).norm();
          return {std::max(0.0, d - s.radius), d + s.radius};
        } else if constexpr (std::is_same_v<T, Annulus>) {
          const double d = (x0 - s.center).norm();
          double near = 0.0;
          if (d < s.inner)
            near = s.inner - d;
          else if (d > s.outer)
            near = d - s.outer;
          return {near, d + s.outer};
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double t = x0.dot(s.normal);
          const double near = std::max({0.0, s.a - t, t - s.b});
          if (dim_ == 1)
            return {near, std::max(std::abs(t - s.a), std::abs(t - s.b))};
          return {near, inf};
        } else {
          Interval r{inf, -inf};
          for (const Domain& m : s) {
            const Interval mr = m.distance_range(x0);
            r.lo = std::min(r.lo, mr.lo);
            r.hi = std::max(r.hi, mr.hi);
          }
          return r;
        }
      },
      shape_->v);
}

bool Domain::projects_to(const Direction& sigma, double t) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Annulus>) {
          const double tau = std::abs(t - s.center.dot(sigma.vec()));
          if (dim_ == 1) return tau >= s.inner && tau <= s.outer;
          return tau <= s.outer;
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double dot = sigma.vec().dot(s.normal);
          const double perp = perp_part(sigma.vec(), s.normal).norm();
          if (perp > 1e-12) return true;
          const double tau = t * dot;
          return tau >= s.a && tau <= s.b;
        } else if constexpr (std::is_same_v<T, Union>) {
          for (const Domain& m : s)
            if (m.projects_to(sigma, t)) return true;
          return false;
        } else {
          // convex shapes project exactly onto their interval
          const Interval pi = projection_interval(*this, sigma);
          return t >= pi.lo && t <= pi.hi;
        }
      },
      shape_->v);
}

bool Domain::cell_inside(const Vector& x, const Vector& half) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (int k = 0; k < dim_; ++k)
            if (!(x[k] - half[k] > s.lo[k] && x[k] + half[k] < s.hi[k]))
              return false;
          return true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          double far2 = 0.0;
          for (int k = 0; k < dim_; ++k) {
            const double f = std::abs(x[k] - s.center[k]) + half[k];
            far2 += f * f;
          }
          return far2 < s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          double far2 = 0.0, near2 = 0.0;
          for (int k = 0; k < dim_; ++k) {
            const double d = std::abs(x[k] - s.center[k]);
            const double f = d + half[k];
            far2 += f * f;
            const double n = std::max(0.0, d - half[k]);
            near2 += n * n;
          }
          return far2 < s.outer * s.outer && near2 > s.inner * s.inner;
        } else if constexpr (std::is_same_v<T, Strip>) {
          double spread = 0.0;
          for (int k = 0; k < dim_; ++k)
            spread += half[k] * std::abs(s.normal[k]);
          const double t = x.dot(s.normal);
          return t - spread > s.a && t + spread < s.b;
        } else {
          for (const Domain& m : s)
            if (m.cell_inside(x, half)) return true;
          return false;
        }
      },
      shape_->v);
}

Domain Domain::translated(const Vector& t) const {
  return std::visit(
      [&](const auto& s) -> Domain {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return Domain::box(s.lo + t, s.hi + t);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Domain::ball(s.center + t, s.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return Domain::annulus(s.center + t, s.inner, s.outer);
        } else if constexpr (std::is_same_v<T, Strip>) {
          const double shift = t.dot(s.normal);
          return Domain::strip(Direction(s.normal), s.a + shift, s.b + shift);
        } else {
          std::vector<Domain> moved;
          moved.reserve(s.size());
          for (const Domain& m : s) moved.push_back(m.translated(t));
          return Domain::unite(std::move(moved));
        }
      },
      shape_->v);
}

Domain Domain::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
  return std::visit(
      [&](const auto& s) -> Domain {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return Domain::box(factor * s.lo, factor * s.hi);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Domain::ball(factor * s.center, factor * s.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return Domain::annulus(factor * s.center, factor * s.inner,
                                 factor * s.outer);
        } else if constexpr (std::is_same_v<T, Strip>) {
          return Domain::strip(Direction(s.normal), factor * s.a,
                               factor * s.b);
        } else {
          std::vector<Domain> out;
          out.reserve(s.size());
          for (const Domain& m : s) out.push_back(m.scaled(factor));
          return Domain::unite(std::move(out));
        }
      },
      shape_->v);
}

namespace {

std::string vec_str(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < v.size(); ++k) os << (k ? " " : "") << v[k];
  os << ")";
  return os.str();
}

}  // namespace

std::string Domain::describe() const {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, Box>) {
          os << "box" << vec_str(s.lo) << "-" << vec_str(s.hi);
        } else if constexpr (std::is_same_v<T, Ball>) {
          os << "ball" << vec_str(s.center) << " r=" << s.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          os << "annulus" << vec_str(s.center) << " r=" << s.inner << ".."
             << s.outer;
        } else if constexpr (std::is_same_v<T, Strip>) {
          os << "strip n=" << vec_str(s.normal) << " " << s.a << ".." << s.b;
        } else {
          os << "union[";
          for (std::size_t i = 0; i < s.size(); ++i)
            os << (i ? "; " : "") << s[i].describe();
          os << "]";
        }
        return os.str();
      },
      shape_->v);
}

// ------------------------------------------------------------ free queries

Interval projection_interval(const Domain& domain, const Direction& sigma) {
  const double hi = domain.support(sigma);
  const double lo = -domain.support(Direction(-sigma.vec()));
  return {lo, hi};
}

double directional_constant(const Domain& domain, const Direction& sigma) {
  const Interval pi = projection_interval(domain, sigma);
  if (!pi.finite()) return inf;
  return 0.5 * pi.width();
}

namespace {

struct Enclosure {
  bool is_ball;
  Vector center;
  double radius;
  Vector lo, hi;
};

Enclosure enclosure_of(const Domain& d) {
  switch (d.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus:
      return {true, d.center(), d.outer_radius(), {}, {}};
    default: {
      auto [lo, hi] = d.bounding_box();
      return {false, {}, 0.0, std::move(lo), std::move(hi)};
    }
  }
}

double pair_farthest(const Enclosure& a, const Enclosure& b) {
  if (a.is_ball && b.is_ball)
    return (a.center - b.center).norm() + a.radius + b.radius;
  if (a.is_ball) {
    double best = 0.0;
    for (const Vector& c : box_corners(b.lo, b.hi))
      best = std::max(best, (c - a.center).norm() + a.radius);
    return best;
  }
  if (b.is_ball) return pair_farthest(b, a);
  double best = 0.0;
  for (const Vector& ca : box_corners(a.lo, a.hi))
    for (const Vector& cb : box_corners(b.lo, b.hi))
      best = std::max(best, (ca - cb).norm());
  return best;
}

}  // namespace

double diameter(const Domain& domain) {
  if (!domain.bounded()) return inf;
  switch (domain.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus:
      return 2.0 * domain.outer_radius();
    case Domain::ShapeKind::Box:
    case Domain::ShapeKind::Strip: {  // bounded strips only exist in 1D
      auto [lo, hi] = domain.bounding_box();
      return (hi - lo).norm();
    }
    case Domain::ShapeKind::Union: {
      const auto& members = domain.members();
      std::vector<Enclosure> encs;
      encs.reserve(members.size());
      for (const Domain& m : members) encs.push_back(enclosure_of(m));
      double best = 0.0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        best = std::max(best, diameter(members[i]));
        for (std::size_t j = i + 1; j < members.size(); ++j)
          best = std::max(best, pair_farthest(encs[i], encs[j]));
      }
      return best;
    }
  }
  return inf;
}

double circumradius(const Domain& domain) {
  if (!domain.bounded()) return inf;
  switch (domain.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus:
      return domain.outer_radius();
    case Domain::ShapeKind::Box:
    case Domain::ShapeKind::Strip: {
      auto [lo, hi] = domain.bounding_box();
      return 0.5 * (hi - lo).norm();
    }
    case Domain::ShapeKind::Union:
      break;
  }
  // The enclosing-ball objective is a max over features |c - q| + R, with
  // balls contributing their center/outer radius and boxes their corners.
  // One- and two-feature support sets have closed-form optima with a cheap
  // feasibility certificate; the rest is branch-and-bound with exact
  // per-feature cell bounds.
  struct Feature {
    Vector point;
    double radius;
  };
  std::vector<Feature> feats;
  const std::function<void(const Domain&)> collect = [&](const Domain& d) {
    switch (d.shape_kind()) {
      case Domain::ShapeKind::Ball:
      case Domain::ShapeKind::Annulus:
        feats.push_back({d.center(), d.outer_radius()});
        return;
      case Domain::ShapeKind::Union:
        for (const Domain& m : d.members()) collect(m);
        return;
      default: {
        auto [mlo, mhi] = d.bounding_box();
        for (Vector& corner : box_corners(mlo, mhi))
          feats.push_back({std::move(corner), 0.0});
        return;
      }
    }
  };
  collect(domain);

  auto fval = [&](const Vector& c) {
    double m = 0.0;
    for (const Feature& f : feats)
      m = std::max(m, (c - f.point).norm() + f.radius);
    return m;
  };

  const double scale = diameter(domain);
  const double tol = 1e-9 * scale;
  double best = inf;

  // single feature covering everything
  for (const Feature& f : feats) {
    const double t = fval(f.point);
    best = std::min(best, t);
    if (t <= f.radius + tol) return t;
  }
  // two-feature support: center on the segment between the features, both
  // active with opposite unit directions, so a feasible candidate is a
  // global minimizer of the convex objective; scan in ascending radius
  struct PairCandidate {
    double t;
    std::size_t i, j;
  };
  std::vector<PairCandidate> pairs;
  pairs.reserve(feats.size() * (feats.size() - 1) / 2);
  for (std::size_t i = 0; i < feats.size(); ++i) {
    for (std::size_t j = i + 1; j < feats.size(); ++j) {
      const double dist = (feats[j].point - feats[i].point).norm();
      if (dist <= std::abs(feats[i].radius - feats[j].radius)) continue;
      pairs.push_back(
          {0.5 * (dist + feats[i].radius + feats[j].radius), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PairCandidate& a, const PairCandidate& b) {
              return a.t != b.t ? a.t < b.t : std::tie(a.i, a.j) < std::tie(b.i, b.j);
            });
  for (const PairCandidate& pc : pairs) {
    if (pc.t >= best) break;  // later candidates cannot certify lower
    const Vector d = feats[pc.j].point - feats[pc.i].point;
    const Vector c =
        feats[pc.i].point + (pc.t - feats[pc.i].radius) / d.norm() * d;
    const double v = fval(c);
    best = std::min(best, v);
    if (v <= pc.t + tol) return pc.t;
  }

  // branch-and-bound; a feature's minimum over a cell is its clamp
  // distance, so the cell bound is exact per feature
  auto [lo, hi] = domain.bounding_box();
  const int dim = domain.dimension();
  auto cell_lower = [&](const Vector& c, const Vector& half) {
    double m = 0.0;
    for (const Feature& f : feats) {
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double d = std::max(0.0, std::abs(c[a] - f.point[a]) - half[a]);
        d2 += d * d;
      }
      m = std::max(m, std::sqrt(d2) + f.radius);
    }
    return m;
  };

  struct Cell {
    double lower;
    std::int64_t seq;  // deterministic tie-break
    Vector center;
    Vector half;
  };
  auto worse = [](const Cell& a, const Cell& b) {
    return a.lower != b.lower ? a.lower > b.lower : a.seq > b.seq;
  };
  std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> frontier(worse);

  Vector center = 0.5 * (lo + hi);
  Vector half = 0.5 * (hi - lo);
  best = std::min(best, fval(center));
  std::int64_t seq = 0;
  frontier.push({cell_lower(center, half), seq++, center, half});

  for (std::int64_t pops = 0; !frontier.empty() && pops < 500000; ++pops) {
    const Cell cell = frontier.top();
    frontier.pop();
    if (best - cell.lower <= tol) break;
    const Vector child_half = 0.5 * cell.half;
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Vector c(dim);
      for (int a = 0; a < dim; ++a)
        c[a] = cell.center[a] +
               ((mask >> a) & 1 ? child_half[a] : -child_half[a]);
      best = std::min(best, fval(c));
      const double lower = cell_lower(c, child_half);
      if (lower < best - tol) frontier.push({lower, seq++, c, child_half});
    }
  }
  return best;
}

BestDirection best_direction(const Domain& domain,
                             const std::vector<Direction>& basis) {
  if (basis.empty()) throw std::invalid_argument("basis must be nonempty");
  int best = 0;
  double best_value = directional_constant(domain, basis[0]);
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const double v = directional_constant(domain, basis[i]);
    if (v < best_value) {
      best_value = v;
      best = static_cast<int>(i);
    }
  }
  return {best, basis[static_cast<std::size_t>(best)], best_value};
}

// -------------------------------------------------- exponent-range helpers

Interval transverse_distance_range(const Domain& domain, const Direction& sigma,
                                   const Vector& center) {
  if (domain.dimension() == 1) return {0.0, 0.0};
  switch (domain.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus: {
      const double s = perp_part(domain.center() - center, sigma.vec()).norm();
      const double radius = domain.outer_radius();
      return {std::max(0.0, s - radius), s + radius};
    }
    case Domain::ShapeKind::Box: {
      const auto axis = sigma.axis();
      if (!axis)
        throw std::runtime_error(
            "transverse range over a box needs an axis-aligned direction");
      auto [lo, hi] = domain.bounding_box();
      double near2 = 0.0, far2 = 0.0;
      for (int k = 0; k < domain.dimension(); ++k) {
        if (k == *axis) continue;
        const double n =
            std::max({0.0, lo[k] - center[k], center[k] - hi[k]});
        near2 += n * n;
        const double f =
            std::max(std::abs(center[k] - lo[k]), std::abs(center[k] - hi[k]));
        far2 += f * f;
      }
      return {std::sqrt(near2), std::sqrt(far2)};
    }
    case Domain::ShapeKind::Strip: {
      if (!domain.bounded_along(sigma))
        throw std::runtime_error(
            "transverse range needs the strip normal parallel to sigma");
      return {0.0, inf};
    }
    case Domain::ShapeKind::Union: {
      Interval r{inf, -inf};
      for (const Domain& m : domain.members()) {
        const Interval mr = transverse_distance_range(m, sigma, center);
        r.lo = std::min(r.lo, mr.lo);
        r.hi = std::max(r.hi, mr.hi);
      }
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<Interval> slice_distance_range(const Domain& domain,
                                             const Direction& sigma, double t,
                                             const Vector& center) {
  const int dim = domain.dimension();
  if (dim == 1) {
    Vector x(1);
    x[0] = t * sigma.vec()[0];
    if (!domain.contains(x, 1e-12 * (1.0 + std::abs(t)))) return std::nullopt;
    const double d = std::abs(x[0] - center[0]);
    return Interval{d, d};
  }

  switch (domain.shape_kind()) {
    case Domain::ShapeKind::Ball:
    case Domain::ShapeKind::Annulus: {
      const Vector& cd = domain.center();
      const double outer = domain.outer_radius();
      const double inner = domain.inner_radius();
      const double tau = t - cd.dot(sigma.vec());
      if (std::abs(tau) > outer) return std::nullopt;
      const double rho_out =
          std::sqrt(std::max(0.0, outer * outer - tau * tau));
      const double rho_in = std::sqrt(std::max(0.0, inner * inner - tau * tau));
      const double dpar = std::abs(center.dot(sigma.vec()) - t);
      const double s = perp_part(center - cd, sigma.vec()).norm();
      const double perp_lo = std::max({0.0, rho_in - s, s - rho_out});
      const double perp_hi = s + rho_out;
      return Interval{std::hypot(dpar, perp_lo), std::hypot(dpar, perp_hi)};
    }
    case Domain::ShapeKind::Box: {
      const auto axis = sigma.axis();
      if (!axis)
        throw std::runtime_error(
            "slice range over a box needs an axis-aligned direction");
      auto [lo, hi] = domain.bounding_box();
      const double xk = t * sigma.vec()[*axis];
      if (xk < lo[*axis] || xk > hi[*axis]) return std::nullopt;
      double near2 = 0.0, far2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        if (k == *axis) {
          const double f = std::abs(center[k] - xk);
          near2 += f * f;
          far2 += f * f;
          continue;
        }
        const double n = std::max({0.0, lo[k] - center[k], center[k] - hi[k]});
        near2 += n * n;
        const double f =
            std::max(std::abs(center[k] - lo[k]), std::abs(center[k] - hi[k]));
        far2 += f * f;
      }
      return Interval{std::sqrt(near2), std::sqrt(far2)};
    }
    case Domain::ShapeKind::Strip: {
      if (!domain.bounded_along(sigma))
        throw std::runtime_error(
            "slice range needs the strip normal parallel to sigma");
      if (!domain.projects_to(sigma, t)) return std::nullopt;
      const double dpar = std::abs(center.dot(sigma.vec()) - t);
      return Interval{dpar, inf};
    }
    case Domain::ShapeKind::Union: {
      Interval r{inf, -inf};
      bool any = false;
      for (const Domain& m : domain.members()) {
        const auto mr = slice_distance_range(m, sigma, t, center);
        if (!mr) continue;
        any = true;
        r.lo = std::min(r.lo, mr->lo);
        r.hi = std::max(r.hi, mr->hi);
      }
      if (!any) return std::nullopt;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace hp
