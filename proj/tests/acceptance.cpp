// Acceptance suite: one numbered criterion per run (or all without
// arguments). Each criterion prints a single PASS/FAIL line with its
// runtime; the exit code is the number of failed criteria.

#include "hp/extremal.hpp"
#include "hp/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

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

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
  void note(const std::string& s) {
    detail << (detail.str().empty() ? "" : "; ") << s;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- criteria

// 1. 1e4 random parameter/point samples satisfy the divergence certificate.
Outcome divergence_certificate() {
  Outcome out;
  std::mt19937_64 gen(20240801);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int dim = 1 + trial % 3;
    const double alpha = 0.2 + 3.8 * unit(gen);
    double beta = -3.0 + 6.0 * unit(gen);
    if (beta == 0.0) beta = 0.7;
    if (alpha * beta >= dim) beta = (dim - 1e-6) / alpha;
    const double lambda = std::pow(10.0, -3.0 + 4.0 * unit(gen));
    Vector x0(dim), x(dim);
    for (int k = 0; k < dim; ++k) {
      x0[k] = -2.0 + 4.0 * unit(gen);
      x[k] = -2.0 + 4.0 * unit(gen);
    }
    const WeightParams w(lambda, alpha, beta, x0);
    const double div = weight_divergence(w, x);
    const double bound = divergence_lower_bound(w) * weight_value(w, x);
    if (!(div >= bound - 1e-12 * std::abs(div))) ++violations;
  }
  out.require(violations == 0,
              "certificate violated " + std::to_string(violations) + " times");
  return out;
}

// 2. The bundled suite passes on every row and spans the advertised space.
Outcome soundness_sweep() {
  Outcome out;
  const fs::path outdir = fs::temp_directory_path() / "hp_acceptance_suite";
  fs::remove_all(outdir);
  RunOptions opt;
  opt.config_path = std::string(HP_SOURCE_DIR) + "/configs/default_suite.json";
  opt.output_dir = outdir.string();
  const RunSummary summary = run_config(opt);
  out.require(summary.exit_code == 0,
              "suite exit code " + std::to_string(summary.exit_code) +
                  (summary.message.empty() ? "" : " (" + summary.message + ")"));
  out.require(summary.total_rows >= 200,
              "only " + std::to_string(summary.total_rows) + " rows");
  out.require(summary.failures == 0,
              std::to_string(summary.failures) + " failing rows");
  out.require(summary.kinds_seen.size() == 9,
              "kinds covered: " + std::to_string(summary.kinds_seen.size()));

  // dimension and exponent coverage, read back from the config itself
  const RunConfig cfg = load_config(opt.config_path);
  std::set<int> dims;
  std::set<double> ps;
  for (const JobSpec& job : cfg.jobs)
    for (const InequalityInstance& inst : job.instances) {
      dims.insert(inst.dimension());
      if (inst.exponent().is_constant()) ps.insert(inst.constant_p());
    }
  out.require(dims == std::set<int>{1, 2, 3}, "dimension coverage");
  for (double p : {1.0, 1.5, 2.0, 3.0})
    out.require(ps.count(p) == 1, "exponent coverage at p=" + fmt(p));
  out.note(std::to_string(summary.total_rows) + " rows, worst ratio " +
           fmt(summary.worst_ratio));
  return out;
}

// 3. Near-extremal family ratios: strictly increasing toward the sharp
// constant; the max must land in [3.8, 4*(1+1e-6)].
Outcome sharp_constant_reproduction() {
  Outcome out;
  const auto inst =
      InequalityInstance::sharp_hardy(whole_space(3), 2.0, vec({0, 0, 0}));
  const std::vector<double> eps{0.1, 0.05, 0.02, 0.01};
  std::vector<TestFunction> family;
  for (double e : eps) family.push_back(hardy_family(3, 2.0, e, 1e-4, 1.0));
  const ExtremalResult r =
      sharpness_report(inst, family, eps, /*radial_fast=*/true, 100000);

  bool increasing = true;
  std::ostringstream curve;
  for (std::size_t i = 0; i < r.curve.size(); ++i) {
    if (i) {
      increasing = increasing && r.curve[i].second > r.curve[i - 1].second;
      curve << " < ";
    }
    curve << fmt(r.curve[i].second);
  }
  out.require(increasing, "ratios not strictly increasing in decreasing eps");
  const double max_ratio = r.estimated_optimal_constant;
  out.require(max_ratio >= 3.8 && max_ratio <= 4.0 * (1.0 + 1e-6),
              "max ratio " + fmt(max_ratio) + " outside [3.8, 4*(1+1e-6)]");
  out.note("curve " + curve.str());
  return out;
}

// 4. 1D Dirichlet eigenvalue: optimal norm constant within 1e-3 of 1/pi.
Outcome eigen_oracle_1d() {
  Outcome out;
  const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
  const auto inst =
      InequalityInstance::directional_poincare(seg, 2.0, axis_direction(1, 0));
  const ExtremalResult r = optimal_constant_p2(inst, 2048);
  out.require(r.converged, "inverse iteration did not converge");
  const double norm_constant = std::sqrt(r.estimated_optimal_constant);
  out.require(std::abs(norm_constant - 1.0 / kPi) <= 1e-3,
              "norm constant " + fmt(norm_constant) + " vs 1/pi");
  out.require(norm_constant <= 1.0, "norm constant above the certified 1");
  out.note("norm constant " + fmt(norm_constant) + ", modular " +
           fmt(r.estimated_optimal_constant));
  return out;
}

// 5. 2D Dirichlet eigenvalue on the unit square against 2 pi^2, below both
// certified routes.
Outcome eigen_oracle_2d() {
  Outcome out;
  const Domain square = Domain::box(vec({0, 0}), vec({1, 1}));
  const auto inst = InequalityInstance::classical_poincare(square, 2.0);
  const ExtremalResult r = optimal_constant_p2(inst, 256);
  out.require(r.converged, "inverse iteration did not converge");
  const double lambda = 1.0 / r.estimated_optimal_constant;
  const double target = 2.0 * kPi * kPi;
  out.require(std::abs(lambda - target) / target <= 1e-3,
              "lambda " + fmt(lambda) + " vs 2 pi^2");
  out.require(r.estimated_optimal_constant <= 0.5,
              "modular constant above the certified 0.5");
  out.require(r.estimated_optimal_constant <= 1.0,
              "modular constant above the connected-diameter bound 1");
  out.note("lambda " + fmt(lambda) + ", modular " +
           fmt(r.estimated_optimal_constant));
  return out;
}

// 6. Quadrature oracles: disk area and the inverse-square shell integral.
Outcome quadrature_oracles() {
  Outcome out;
  const Domain disk = Domain::ball(vec({0, 0}), 1.0);
  Grid g2;
  g2.lo = vec({-1, -1});
  g2.hi = vec({1, 1});
  g2.n = 512;
  const IntegralResult area =
      integrate([](const Vector&) { return 1.0; }, disk, g2);
  out.require(std::abs(area.value - kPi) <= 1e-3,
              "disk area off by " + fmt(std::abs(area.value - kPi)));

  const Domain ball = Domain::ball(vec({0, 0, 0}), 1.0);
  Grid g3;
  g3.lo = vec({-1, -1, -1});
  g3.hi = vec({1, 1, 1});
  g3.n = 128;
  g3.singular_point = vec({0, 0, 0});
  const IntegralResult inv2 = integrate(
      [](const Vector& x) { return 1.0 / x.squaredNorm(); }, ball, g3,
      SingularFactor{2.0, 1.0});
  const double exact = 4.0 * kPi;
  out.require(std::abs(inv2.value - exact) <= 3.0 * inv2.error_estimate,
              "shell integral outside three error estimates");
  out.note("area err " + fmt(std::abs(area.value - kPi)) + ", shell err " +
           fmt(std::abs(inv2.value - exact)) + " vs bound " +
           fmt(3.0 * inv2.error_estimate));
  return out;
}

// 7. Decreasing radial exponent on the disk: modular inequality with the
// directional modular constant, plus the logarithmic-term sign in both
// monotonicity regimes.
Outcome variable_exponent_radial() {
  Outcome out;
  const Domain disk = Domain::ball(vec({0, 0}), 1.0);
  const Direction e1 = axis_direction(2, 0);
  const ExponentField dec = ExponentField::radial(vec({0, 0}), 2.0, -0.5, 2.0);
  const ExponentField inc = ExponentField::radial(vec({0, 0}), 1.0, 0.5, 1.5);
  const auto inst = InequalityInstance::varexp_radial(disk, dec, e1);

  const std::vector<TestFunction> functions{
      clamp_unit(bump(vec({0, 0}), 1.0)),
      clamp_unit(bump(vec({0.3, 0.2}), 0.4)),
      clamp_unit(bump(vec({-0.2, 0.0}), 0.6)),
  };
  const GridSettings settings{256, 64, 2.0};
  for (const TestFunction& u : functions) {
    const VerificationReport rep = verify(inst, u, settings);
    out.require(rep.pass, "modular inequality failed (ratio " +
                              fmt(rep.ratio) + ")");
    const Grid grid = make_grid(disk, u.support(), settings.n);
    const IntegralResult log_dec = log_term_integral(dec, u, e1, disk, grid);
    out.require(log_dec.value >= -log_dec.error_estimate,
                "decreasing-profile log term negative: " + fmt(log_dec.value));
    const IntegralResult log_inc = log_term_integral(inc, u, e1, disk, grid);
    out.require(log_inc.value <= log_inc.error_estimate,
                "increasing-profile log term positive: " + fmt(log_inc.value));
  }
  return out;
}

// 8. Invariances: translation covariance, scale invariance, tie-break
// determinism, continuity as p drops to 1, byte-identical reruns.
Outcome invariance_suite() {
  Outcome out;
  const GridSettings settings{128, 32, 2.0};

  {
    const Domain disk = Domain::ball(vec({0.25, 0}), 1.0);
    const WeightParams w(1.0, 2.0, 0.5, vec({0.25, 0}));
    const auto inst = InequalityInstance::general_weighted(disk, 2.0, w);
    const TestFunction u = bump(vec({0.25, 0}), 1.0);
    const VerificationReport base = verify(inst, u, settings);
    const Vector t = vec({3.0, -5.5});
    const VerificationReport moved =
        verify(inst.translated(t), u.translated(t), settings);
    out.require(
        std::abs(moved.ratio - base.ratio) <= 1e-10 * std::abs(base.ratio),
        "translation covariance off by " +
            fmt(std::abs(moved.ratio - base.ratio)));
  }

  {
    const auto inst =
        InequalityInstance::sharp_hardy(whole_space(3), 2.0, vec({0, 0, 0}));
    const TestFunction u = bump(vec({0.4, 0, 0}), 0.3);
    const VerificationReport base = verify(inst, u, {64, 24, 2.0});
    for (double s : {0.5, 2.0}) {
      const VerificationReport scaled =
          verify(inst, u.dilated(s), {64, 24, 2.0});
      out.require(std::abs(scaled.ratio - base.ratio) <=
                      (base.tolerance_used + scaled.tolerance_used) *
                          std::max(base.ratio, 1.0),
                  "scale invariance at s=" + fmt(s));
    }
  }

  {
    const Domain square = Domain::box(vec({0, 0}), vec({1, 1}));
    const std::vector<Direction> basis{axis_direction(2, 0),
                                       axis_direction(2, 1)};
    for (int rep = 0; rep < 8; ++rep)
      out.require(best_direction(square, basis).index == 0,
                  "tie-break drifted from the lowest index");
  }

  {
    const Domain seg = Domain::box(vec({0.0}), vec({1.0}));
    const TestFunction u = bump(vec({0.5}), 0.5);
    auto ratio_at = [&](double p) {
      const auto inst = InequalityInstance::directional_poincare(
          seg, p, axis_direction(1, 0));
      return verify(inst, u, {512, 32, 2.0}).ratio;
    };
    const double r1 = ratio_at(1.0);
    const double ra = ratio_at(1.01);
    const double rb = ratio_at(1.001);
    const double extrapolated =
        rb + (rb - ra) * (1.0 - 1.001) / (1.001 - 1.01);
    out.require(std::abs(extrapolated - r1) <= 1e-2,
                "limit mismatch " + fmt(std::abs(extrapolated - r1)));
  }

  {
    const fs::path dir = fs::temp_directory_path() / "hp_acceptance_rerun";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "mini.json";
    std::ofstream(cfg) << R"({"grid": {"n": 96},
      "jobs": [{"id": "mini", "kind": "sweep",
        "instances": [
          {"kind": "classical_poincare",
           "domain": {"kind": "ball", "center": [0,0], "radius": 1}, "p": 2},
          {"kind": "dual_hardy_plain",
           "domain": {"kind": "ball", "center": [0,0], "radius": 1},
           "p": 1.5, "x0": [0,0]}],
        "functions": [{"kind": "bump", "center": [0,0], "radius": 1},
                      {"kind": "bump", "center": [0.2,0.1], "radius": 0.5}]}]})";
    auto run_into = [&](const std::string& sub, int workers) {
      RunOptions opt;
      opt.config_path = cfg.string();
      opt.output_dir = (dir / sub).string();
      opt.workers = workers;
      return run_config(opt);
    };
    const RunSummary a = run_into("a", 1);
    const RunSummary b = run_into("b", 4);
    set_worker_count(0);
    out.require(a.exit_code == 0 && b.exit_code == 0, "mini config failed");
    auto bytes = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    out.require(bytes(dir / "a" / "mini.csv") == bytes(dir / "b" / "mini.csv"),
                "rerun CSV bytes differ");
  }
  return out;
}

// 9. Analytic gradients match central differences on interior samples.
Outcome gradient_checks() {
  Outcome out;
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct FamilyCase {
    std::string name;
    TestFunction u;
    std::function<Vector(std::mt19937_64&)> sample;
    double h;
  };

  auto ball_sampler = [&unit](int dim, double lo_r, double hi_r) {
    return [dim, lo_r, hi_r, &unit](std::mt19937_64& g) {
      Vector x(dim);
      double norm = 0.0;
      for (int k = 0; k < dim; ++k) {
        x[k] = 2.0 * unit(g) - 1.0;
        norm += x[k] * x[k];
      }
      norm = std::sqrt(norm);
      const double target = lo_r + (hi_r - lo_r) * unit(g);
      return Vector(x * (target / std::max(norm, 1e-12)));
    };
  };
  auto box_sampler = [&unit](const Vector& lo, const Vector& hi, double pad) {
    return [lo, hi, pad, &unit](std::mt19937_64& g) {
      Vector x(lo.size());
      for (int k = 0; k < lo.size(); ++k) {
        const double w = hi[k] - lo[k];
        x[k] = lo[k] + w * (pad + (1.0 - 2.0 * pad) * unit(g));
      }
      return x;
    };
  };

  std::vector<FamilyCase> cases;
  cases.push_back({"bump3", bump(vec({0, 0, 0}), 1.0),
                   ball_sampler(3, 0.05, 0.9), 3e-6});
  cases.push_back({"bump2", bump(vec({0.5, 0.5}), 0.5),
                   [&](std::mt19937_64& g) {
                     Vector x = ball_sampler(2, 0.05 * 0.5, 0.9 * 0.5)(g);
                     return Vector(x + vec({0.5, 0.5}));
                   },
                   2e-6});
  cases.push_back({"tensor2",
                   tensor_bump(Domain::box(vec({0, 0}), vec({1, 2}))),
                   box_sampler(vec({0, 0}), vec({1, 2}), 0.06), 3e-6});
  cases.push_back({"tensor3",
                   tensor_bump(Domain::box(vec({0, 0, 0}), vec({1, 1, 1}))),
                   box_sampler(vec({0, 0, 0}), vec({1, 1, 1}), 0.06), 3e-6});
  cases.push_back({"hardy3", hardy_family(3, 2.0, 0.05, 1e-3, 1.0),
                   ball_sampler(3, 5e-3, 0.95), 1e-7});
  cases.push_back({"hardy2", hardy_family(2, 1.0, 0.1, 1e-3, 1.0),
                   ball_sampler(2, 5e-3, 0.95), 1e-7});
  cases.push_back({"clamped",
                   clamp_unit(hardy_family(3, 2.0, 0.05, 1e-3, 1.0)),
                   ball_sampler(3, 5e-3, 0.95), 1e-7});

  for (auto& c : cases) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vector x = c.sample(gen);
      const Vector an = c.u.gradient(x);
      Vector fd(x.size());
      for (int k = 0; k < x.size(); ++k) {
        Vector xp = x, xm = x;
        xp[k] += c.h;
        xm[k] -= c.h;
        fd[k] = (c.u.value(xp) - c.u.value(xm)) / (2.0 * c.h);
      }
      const double rel = (fd - an).norm() / std::max(an.norm(), 1e-12);
      worst = std::max(worst, rel);
    }
    out.require(worst < 1e-6, c.name + " worst relative error " + fmt(worst));
  }
  return out;
}

struct Criterion {
  const char* name;
  Outcome (*run)();
  double budget_seconds;
};

const Criterion kCriteria[] = {
    {"divergence certificate", divergence_certificate, 1.0},
    {"soundness sweep", soundness_sweep, 300.0},
    {"sharp-constant reproduction", sharp_constant_reproduction, 10.0},
    {"eigen oracle 1D", eigen_oracle_1d, 5.0},
    {"eigen oracle 2D", eigen_oracle_2d, 60.0},
    {"quadrature oracles", quadrature_oracles, 30.0},
    {"variable exponent radial", variable_exponent_radial, 120.0},
    {"invariance suite", invariance_suite, 120.0},
    {"gradient checks", gradient_checks, 5.0},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    if (only && only != i + 1) continue;
    const Criterion& c = kCriteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed > c.budget_seconds) {
      out.pass = false;
      out.note("runtime " + fmt(elapsed) + " s over budget " +
               fmt(c.budget_seconds) + " s");
    }
    std::printf("criterion %d (%s): %s (%.2f s)%s%s\n", i + 1, c.name,
                out.pass ? "PASS" : "FAIL", elapsed,
                out.detail.str().empty() ? "" : " -- ",
                out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
