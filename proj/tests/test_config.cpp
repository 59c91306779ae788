#include "hp/config.hpp"
#include "hp/runner.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("hp_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& name,
                         const json& j) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p.string();
}

json tiny_suite() {
  return json::parse(R"({
    "seed": 0,
    "grid": {"n": 96, "n_3d": 24},
    "jobs": [
      {
        "id": "seg",
        "kind": "sweep",
        "instances": [
          {"kind": "directional_poincare",
           "domain": {"kind": "box", "lo": [0], "hi": [1]},
           "p": 2, "sigma": [1]},
          {"kind": "classical_poincare",
           "domain": {"kind": "box", "lo": [0], "hi": [1]},
           "p": 1.5}
        ],
        "functions": [
          {"kind": "bump", "center": [0.5], "radius": 0.5},
          {"kind": "bump", "center": [0.3], "radius": 0.2}
        ]
      }
    ]
  })");
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("domain and instance parsing, including infinities") {
  const json dj = json::parse(
      R"({"kind":"box","lo":[0,"-inf"],"hi":[1,"inf"]})");
  const Domain d = parse_domain(dj);
  CHECK_FALSE(d.bounded());
  CHECK(d.bounded_along(axis_direction(2, 0)));

  const json ij = json::parse(R"({
    "kind": "general_weighted",
    "domain": {"kind": "ball", "center": [0,0,0], "radius": 1},
    "p": 2,
    "weight": {"lambda": 1, "alpha": 2, "beta": 1, "x0": [0,0,0]}
  })");
  const InequalityInstance inst = parse_instance(ij);
  CHECK(inst.kind() == InstanceKind::GeneralWeighted);
  CHECK(certified_constant_for(inst) == doctest::Approx(4.0));
}

TEST_CASE("unknown keys abort before any computation") {
  json j = tiny_suite();
  j["typo_key"] = 1;
  CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("typo_key"),
                       std::invalid_argument);

  json nested = tiny_suite();
  nested["jobs"][0]["instances"][0]["domain"]["oops"] = true;
  CHECK_THROWS_WITH_AS(parse_config(nested), doctest::Contains("oops"),
                       std::invalid_argument);
}

TEST_CASE("hypothesis violations exit with code 2") {
  const fs::path dir = temp_dir("hypothesis");
  json bad = tiny_suite();
  bad["jobs"][0]["instances"][0] = json::parse(R"({
    "kind": "general_weighted",
    "domain": {"kind": "ball", "center": [0,0,0], "radius": 1},
    "p": 2,
    "weight": {"lambda": 1, "alpha": 2, "beta": 2, "x0": [0,0,0]}
  })");
  RunOptions opt;
  opt.config_path = write_config(dir, "bad.json", bad);
  opt.output_dir = (dir / "out").string();
  const RunSummary s = run_config(opt);
  CHECK(s.exit_code == 2);
  CHECK(s.message.find("alpha*beta < N") != std::string::npos);
}

TEST_CASE("a recorded row failure exits with code 1") {
  const fs::path dir = temp_dir("rowfail");
  json j = tiny_suite();
  // support sticks out of (0,1): recorded as a failing row, not a crash
  j["jobs"][0]["functions"].push_back(
      json::parse(R"({"kind": "bump", "center": [0.9], "radius": 0.5})"));
  RunOptions opt;
  opt.config_path = write_config(dir, "fail.json", j);
  opt.output_dir = (dir / "out").string();
  const RunSummary s = run_config(opt);
  CHECK(s.exit_code == 1);
  CHECK(s.failures == 2);  // one bad function against two instances
  CHECK(s.total_rows == 6);
  CHECK(s.message.find("not contained") != std::string::npos);
}

TEST_CASE("increasing radial exponent is rejected at config time") {
  const fs::path dir = temp_dir("monotone");
  json bad = tiny_suite();
  bad["jobs"][0]["instances"][0] = json::parse(R"({
    "kind": "varexp_radial",
    "domain": {"kind": "ball", "center": [0,0], "radius": 1},
    "exponent": {"kind": "radial", "center": [0,0], "a": 1, "b": 0.5, "p_max": 1.5},
    "sigma": [1, 0]
  })");
  bad["jobs"][0]["functions"] = json::parse(
      R"([{"kind": "bump", "center": [0,0], "radius": 1, "clamp": true}])");
  RunOptions opt;
  opt.config_path = write_config(dir, "bad.json", bad);
  opt.output_dir = (dir / "out").string();
  const RunSummary s = run_config(opt);
  CHECK(s.exit_code == 2);
  CHECK(s.message.find("non-increasing") != std::string::npos);
}

TEST_CASE("empty job list runs cleanly") {
  const fs::path dir = temp_dir("empty");
  RunOptions opt;
  opt.config_path = write_config(dir, "empty.json",
                                 json::parse(R"({"jobs": []})"));
  opt.output_dir = (dir / "out").string();
  const RunSummary s = run_config(opt);
  CHECK(s.exit_code == 0);
  CHECK(s.total_rows == 0);
  CHECK(fs::exists(dir / "out" / "summary.json"));
}

TEST_CASE("runs are reproducible byte for byte") {
  const fs::path dir = temp_dir("repro");
  const std::string cfg = write_config(dir, "suite.json", tiny_suite());
  RunOptions a;
  a.config_path = cfg;
  a.output_dir = (dir / "a").string();
  RunOptions b;
  b.config_path = cfg;
  b.output_dir = (dir / "b").string();
  b.workers = 3;  // worker count must not matter
  const RunSummary sa = run_config(a);
  const RunSummary sb = run_config(b);
  set_worker_count(0);
  CHECK(sa.exit_code == 0);
  CHECK(sb.exit_code == 0);
  CHECK(sa.total_rows == 4);
  CHECK(file_bytes(dir / "a" / "seg.csv") == file_bytes(dir / "b" / "seg.csv"));
}

TEST_CASE("describe resolves constants without quadrature") {
  const fs::path dir = temp_dir("describe");
  json j = tiny_suite();
  j["jobs"].push_back(json::parse(R"({
    "id": "hardy3",
    "kind": "verify",
    "instance": {"kind": "sharp_hardy",
                 "domain": {"kind": "box",
                            "lo": ["-inf","-inf","-inf"],
                            "hi": ["inf","inf","inf"]},
                 "p": 2, "x0": [0,0,0]},
    "function": {"kind": "bump", "center": [0.5,0,0], "radius": 0.25}
  })"));
  const std::string cfg = write_config(dir, "suite.json", j);
  const std::string text = describe_job(cfg, "hardy3");
  CHECK(text.find("sharp Hardy") != std::string::npos);
  CHECK(text.find("certified constant: 4") != std::string::npos);
  CHECK_THROWS_AS(describe_job(cfg, "nope"), std::invalid_argument);
}

TEST_CASE("top-level grid keys are accepted") {
  json j = tiny_suite();
  j.erase("grid");
  j["grid_n"] = 128;
  j["grid_n_3d"] = 32;
  j["exclusion_multiplier"] = 3.0;
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.grid.n == 128);
  CHECK(cfg.grid.n_3d == 32);
  CHECK(cfg.grid.exclusion_multiplier == 3.0);
}

TEST_CASE("function and exponent parsing round out the schema") {
  const TestFunction u = parse_function(json::parse(
      R"({"kind":"hardy","N":3,"p":2,"eps":0.05,"delta":1e-3,"R":1,"clamp":true})"));
  CHECK(u.sup_norm_bound() == doctest::Approx(1.0));

  const TestFunction moved = parse_function(json::parse(
      R"({"kind":"bump","center":[0,0],"radius":0.5,"translate":[1,1]})"));
  CHECK(moved.value(parse_domain(json::parse(
                        R"({"kind":"ball","center":[1,1],"radius":0.5})"))
                        .center()) == doctest::Approx(std::exp(-1.0)));

  const ExponentField f = parse_exponent(json::parse(
      R"({"kind":"radial","center":[0,0],"a":2,"b":-0.5,"p_max":2})"));
  CHECK(f.monotonicity() == ExponentField::Monotonicity::Decreasing);

  CHECK_THROWS_AS(parse_function(json::parse(R"({"kind":"mystery"})")),
                  std::invalid_argument);
}

TEST_CASE("extremal and sharpness jobs flow through the runner") {
  const fs::path dir = temp_dir("extremal");
  const json j = json::parse(R"({
    "jobs": [
      {"id": "eig",
       "kind": "extremal",
       "method": "eigen",
       "n": 128,
       "dump_function": true,
       "instance": {"kind": "classical_poincare",
                    "domain": {"kind": "box", "lo": [0], "hi": [1]},
                    "p": 2}},
      {"id": "curve",
       "kind": "sharpness",
       "radial": true,
       "radial_n": 20000,
       "instance": {"kind": "sharp_hardy",
                    "domain": {"kind": "box",
                               "lo": ["-inf","-inf","-inf"],
                               "hi": ["inf","inf","inf"]},
                    "p": 2, "x0": [0,0,0]},
       "family": {"kind": "hardy", "N": 3, "p": 2,
                  "eps": [0.1, 0.05], "delta": 1e-3, "R": 1}}
    ]
  })");
  RunOptions opt;
  opt.config_path = write_config(dir, "jobs.json", j);
  opt.output_dir = (dir / "out").string();
  const RunSummary s = run_config(opt);
  CHECK(s.exit_code == 0);
  CHECK(s.total_rows == 3);  // one eigen row, two curve points
  CHECK(s.kinds_seen.count("extremal") == 1);

  // every row keeps the fixed column count (no stray separators)
  for (const char* name : {"eig.csv", "curve.csv"}) {
    std::ifstream csv(dir / "out" / name);
    std::string line;
    while (std::getline(csv, line))
      CHECK(std::count(line.begin(), line.end(), ',') == 12);
  }

  // binary dump plus sidecar for the best grid function
  CHECK(fs::exists(dir / "out" / "eig.bin"));
  CHECK(fs::exists(dir / "out" / "eig.json"));
  const auto side = json::parse(std::ifstream(dir / "out" / "eig.json"));
  REQUIRE(side["shape"].size() == 1);
  const std::size_t count = side["shape"][0].get<std::size_t>();
  CHECK(fs::file_size(dir / "out" / "eig.bin") == count * sizeof(double));
}

TEST_CASE("cli binary maps outcomes to exit codes") {
  const fs::path dir = temp_dir("cli");
  const std::string cfg = write_config(dir, "suite.json", tiny_suite());
  const std::string out = (dir / "cli_out").string();

  auto run_cli = [](const std::string& args) {
    const std::string cmd = std::string(HP_CLI_PATH) + " " + args +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };

  CHECK(run_cli("run --config " + cfg + " --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "seg.csv"));
  CHECK(run_cli("describe --config " + cfg + " --job seg") == 0);
  CHECK(run_cli("run --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("describe --config " + cfg + " --job nope") == 2);
}
