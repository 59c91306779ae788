#include "hp/verifier.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace hp;

namespace {

Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<int>(vals.size()));
  int i = 0;
  for (double t : vals) v[i++] = t;
  return v;
}

Domain whole_space(int dim) {
  Vector lo(dim), hi(dim);
  lo.setConstant(-inf);
  hi.setConstant(inf);
  return Domain::box(lo, hi);
}

const GridSettings kFast{128, 32, 2.0};

}  // namespace

TEST_CASE("certified constants per kind") {
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const auto dp =
      InequalityInstance::directional_poincare(seg, 2.0, axis_direction(1, 0));
  CHECK(certified_constant_for(dp) == doctest::Approx(1.0));

  const auto sh =
      InequalityInstance::sharp_hardy(whole_space(3), 2.0, vec({0, 0, 0}));
  CHECK(certified_constant_for(sh) == doctest::Approx(4.0));

  const Domain square = Domain::box(vec({0, 0}), vec({1, 1}));
  const auto ve = InequalityInstance::varexp_directional(
      square, ExponentField::constant(2.0), axis_direction(2, 0));
  CHECK(certified_constant_for(ve) == doctest::Approx(1.0).epsilon(1e-9));

  const auto cp = InequalityInstance::classical_poincare(square, 2.0);
  CHECK(certified_constant_for(cp) == doctest::Approx(0.5));

  const auto dh = InequalityInstance::dual_hardy_plain(whole_space(2), 1.0,
                                                       vec({0, 0}));
  CHECK(certified_constant_for(dh) == doctest::Approx(0.5));
}

TEST_CASE("zero function verifies vacuously") {
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const TestFunction zero = TestFunction::custom(
      "zero", Domain::box(vec({0.4}), vec({0.6})), 0.0, 0.0,
      [](const Vector&) { return 0.0; },
      [](const Vector&) { return Vector::Zero(1); });
  const auto inst =
      InequalityInstance::directional_poincare(seg, 2.0, axis_direction(1, 0));
  const VerificationReport r = verify(inst, zero, kFast);
  CHECK(r.ratio == 0.0);
  CHECK(r.pass);
}

TEST_CASE("1D directional inequality holds with margin") {
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const TestFunction u = bump(vec({0.5}), 0.5);
  const auto inst =
      InequalityInstance::directional_poincare(seg, 2.0, axis_direction(1, 0));
  const VerificationReport r = verify(inst, u, kFast);
  CHECK(r.pass);
  CHECK(r.ratio < 1.0);
  CHECK(r.ratio > 0.0);

  // both sides against a high-resolution Simpson oracle
  auto val = [&](double t) {
    Vector x(1);
    x[0] = t;
    return u.value(x);
  };
  auto slope = [&](double t) {
    Vector x(1);
    x[0] = t;
    return u.gradient(x)[0];
  };
  const double lhs = oracle::simpson(
      [&](double t) { return val(t) * val(t); }, 0.0, 1.0, 400000);
  const double rhs = oracle::simpson(
      [&](double t) { return slope(t) * slope(t); }, 0.0, 1.0, 400000);
  CHECK(std::abs(r.lhs.value - lhs) <= 3.0 * r.lhs.error_estimate + 1e-12);
  CHECK(std::abs(r.rhs.value - rhs) <= 3.0 * r.rhs.error_estimate + 1e-10);
  CHECK(r.ratio == doctest::Approx(lhs / rhs).epsilon(1e-3));
}

TEST_CASE("3D sharp constant instance: pass and grid stability") {
  const auto inst =
      InequalityInstance::sharp_hardy(whole_space(3), 2.0, vec({0, 0, 0}));
  const TestFunction u = bump(vec({0.5, 0, 0}), 0.25);
  const VerificationReport coarse = verify(inst, u, {64, 24, 2.0});
  const VerificationReport fine = verify(inst, u, {64, 48, 2.0});
  CHECK(coarse.pass);
  CHECK(fine.pass);
  CHECK(coarse.ratio < 1.0);
  CHECK(fine.ratio ==
        doctest::Approx(coarse.ratio)
            .epsilon(coarse.tolerance_used + fine.tolerance_used));
}

TEST_CASE("weighted instance passes for any center") {
  auto gen = oracle::rng(123);
  const Domain disk = Domain::ball(vec({0, 0}), 1.0);
  const TestFunction u = bump(vec({0, 0}), 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x0 = oracle::uniform_point(gen, 2, -2, 2);
    const WeightParams w(0.8, 1.5, 0.9, x0);
    const auto inst = InequalityInstance::general_weighted(disk, 2.0, w);
    const VerificationReport r = verify(inst, u, kFast);
    CHECK(r.pass);
  }
}

TEST_CASE("refined separation bound still verifies") {
  const Domain ann = Domain::annulus(vec({0, 0, 0}), 1.0, 2.0);
  const TestFunction u = bump(vec({1.5, 0, 0}), 0.4);
  const WeightParams w(1.0, 2.0, -1.0, vec({0, 0, 0}));
  const auto plain = InequalityInstance::general_weighted(ann, 2.0, w, false);
  const auto refined = InequalityInstance::general_weighted(ann, 2.0, w, true);
  const VerificationReport r0 = verify(plain, u, {96, 24, 2.0});
  const VerificationReport r1 = verify(refined, u, {96, 24, 2.0});
  CHECK(r0.pass);
  CHECK(r1.pass);
  CHECK(certified_constant_for(refined) < certified_constant_for(plain));
  CHECK(r1.ratio > r0.ratio);
}

TEST_CASE("sweep is row-major, never aborts, and records failures") {
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const std::vector<InequalityInstance> instances{
      InequalityInstance::directional_poincare(seg, 1.0, axis_direction(1, 0))
          .with_label("a"),
      InequalityInstance::directional_poincare(seg, 2.0, axis_direction(1, 0))
          .with_label("b"),
      InequalityInstance::classical_poincare(seg, 2.0).with_label("c"),
  };
  const std::vector<TestFunction> fns{
      bump(vec({0.5}), 0.5),
      bump(vec({0.5}), 2.0),  // support sticks out: recorded failure
  };
  const auto rows = sweep(instances, fns, kFast);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].instance_id == "a#0x0");
  CHECK(rows[1].instance_id == "a#0x1");
  CHECK(rows[2].instance_id == "b#1x0");
  CHECK(rows[5].instance_id == "c#2x1");
  CHECK(rows[0].pass);
  CHECK_FALSE(rows[1].pass);
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].pass);

  CHECK(sweep({}, {}, kFast).empty());
}

TEST_CASE("translation covariance of the full report") {
  const Domain disk = Domain::ball(vec({0.25, 0}), 1.0);
  const WeightParams w(1.0, 2.0, 0.5, vec({0.25, 0}));
  const auto inst = InequalityInstance::general_weighted(disk, 2.0, w);
  const TestFunction u = bump(vec({0.25, 0}), 1.0);
  const VerificationReport base = verify(inst, u, kFast);

  const Vector t = vec({2.5, -4.75});
  const VerificationReport moved = verify(inst.translated(t), u.translated(t),
                                          kFast);
  CHECK(moved.ratio == doctest::Approx(base.ratio).epsilon(1e-10));
  CHECK(moved.constant == doctest::Approx(base.constant).epsilon(1e-12));
}

TEST_CASE("scale invariance of the sharp constant ratio") {
  const auto inst =
      InequalityInstance::sharp_hardy(whole_space(3), 2.0, vec({0, 0, 0}));
  const TestFunction u = bump(vec({0.4, 0, 0}), 0.3);
  const VerificationReport base = verify(inst, u, {64, 24, 2.0});
  for (double s : {0.5, 2.0}) {
    const VerificationReport scaled = verify(inst, u.dilated(s), {64, 24, 2.0});
    CHECK(scaled.ratio ==
          doctest::Approx(base.ratio)
              .epsilon(base.tolerance_used + scaled.tolerance_used + 1e-9));
  }
}

TEST_CASE("unit clamp leaves constant-exponent ratios unchanged") {
  const Domain disk = Domain::ball(vec({0, 0}), 1.0);
  const auto inst = InequalityInstance::classical_poincare(disk, 2.0);
  const TestFunction big = bump(vec({0, 0}), 0.9).scaled_by(20.0);
  const TestFunction clamped = clamp_unit(big);
  REQUIRE(clamped.sup_norm_bound() == doctest::Approx(1.0));
  const VerificationReport a = verify(inst, big, kFast);
  const VerificationReport b = verify(inst, clamped, kFast);
  CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-12));
}

TEST_CASE("modular ratio is continuous as p drops to 1") {
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const TestFunction u = bump(vec({0.5}), 0.5);
  auto ratio_at = [&](double p) {
    const auto inst =
        InequalityInstance::directional_poincare(seg, p, axis_direction(1, 0));
    return verify(inst, u, {512, 32, 2.0}).ratio;
  };
  const double r1 = ratio_at(1.0);
  const double ra = ratio_at(1.01);
  const double rb = ratio_at(1.001);
  // linear extrapolation of the two closest samples down to p = 1
  const double extrapolated = rb + (rb - ra) * (1.0 - 1.001) / (1.001 - 1.01);
  CHECK(std::abs(extrapolated - r1) <= 1e-2);
}

TEST_CASE("variable exponent instances") {
  const Domain disk = Domain::ball(vec({0, 0}), 1.0);
  const ExponentField dec = ExponentField::radial(vec({0, 0}), 2.0, -0.5, 2.0);
  const auto inst = InequalityInstance::varexp_radial(disk, dec,
                                                      axis_direction(2, 0));
  const TestFunction u = clamp_unit(bump(vec({0, 0}), 1.0));
  const VerificationReport r = verify(inst, u, kFast);
  CHECK(r.pass);
  CHECK(r.ratio < 1.0);

  // precondition: sup |u| <= 1
  CHECK_THROWS_AS(verify(inst, bump(vec({0, 0}), 1.0).scaled_by(5.0), kFast),
                  std::invalid_argument);

  // increasing radial profiles are rejected at construction
  CHECK_THROWS_AS(
      InequalityInstance::varexp_radial(
          disk, ExponentField::radial(vec({0, 0}), 1.0, 0.5, 1.5),
          axis_direction(2, 0)),
      std::invalid_argument);

  // directional variant needs the exponent constant along sigma
  CHECK_THROWS_AS(
      InequalityInstance::varexp_directional(disk, dec, axis_direction(2, 0)),
      std::invalid_argument);
  const ExponentField along = ExponentField::along(
      axis_direction(2, 0), vec({0, 0}), 1.0, 0.5, 2.0);
  const auto dir_inst = InequalityInstance::varexp_directional(
      disk, along, axis_direction(2, 0));
  const VerificationReport rd = verify(dir_inst, bump(vec({0, 0}), 1.0), kFast);
  CHECK(rd.pass);
}

TEST_CASE("hypothesis validation at construction") {
  const Domain strip2 = Domain::strip(Direction(vec({0, 1})), 0.0, 1.0);
  CHECK_THROWS_AS(InequalityInstance::directional_poincare(
                      strip2, 2.0, axis_direction(2, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(InequalityInstance::classical_poincare(strip2, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(InequalityInstance::sharp_hardy(whole_space(2), 2.0,
                                                  vec({0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(InequalityInstance::gamma_hardy(whole_space(2), 2.0, 2.5,
                                                  vec({0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(InequalityInstance::dual_hardy_gamma(whole_space(2), 2.0,
                                                       -1.0, vec({0, 0})),
                  std::invalid_argument);
}

TEST_CASE("union domains use the projection hull and note it") {
  const Domain un = Domain::unite({Domain::box(vec({0.0}), vec({1.0})),
                                   Domain::box(vec({2.0}), vec({3.0}))});
  const auto inst =
      InequalityInstance::directional_poincare(un, 2.0, axis_direction(1, 0));
  CHECK(certified_constant_for(inst) == doctest::Approx(9.0));  // (2*1.5)^2
  const TestFunction u = bump(vec({0.5}), 0.5);
  const VerificationReport r = verify(inst, u, kFast);
  CHECK(r.pass);
  CHECK(r.params.find("projection-hull") != std::string::npos);
}

TEST_CASE("csv rows are stable and complete") {
  CHECK(csv_header() ==
        "instance_id,kind,N,p_descr,params,lhs,lhs_err,rhs,rhs_err,constant,"
        "ratio,pass,grid_n");
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const auto inst = InequalityInstance::directional_poincare(
                        seg, 2.0, axis_direction(1, 0))
                        .with_label("demo");
  const VerificationReport r = verify(inst, bump(vec({0.5}), 0.5), kFast);
  const std::string row = csv_row(r);
  CHECK(row.find("demo") == 0);
  CHECK(row.find("directional_poincare") != std::string::npos);
  CHECK(row.find(",true,") != std::string::npos);
  // exactly 12 separators
  CHECK(std::count(row.begin(), row.end(), ',') == 12);
}
