#pragma once

#include "hp/extremal.hpp"
#include "hp/functions.hpp"
#include "hp/verifier.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hp {

/// One experiment job from the config file.
struct JobSpec {
  enum class Kind { Verify, Sweep, Extremal, Sharpness };

  std::string id;
  Kind kind = Kind::Verify;
  std::vector<InequalityInstance> instances;
  std::vector<TestFunction> functions;
  bool clamp = false;
  GridSettings grid;

  // extremal
  std::string method = "eigen";  // or "ascent"
  int extremal_n = 64;
  double tol = 1e-10;
  int max_iter = 10000;
  int steps = 400;
  bool dump_function = false;

  // sharpness
  std::vector<double> parameters;
  bool radial_fast = false;
  int radial_n = 100000;
};

struct RunConfig {
  long seed = 0;
  std::string output_dir = "out";
  GridSettings grid;
  std::vector<JobSpec> jobs;
};

/// Strict parser: unknown keys anywhere abort with std::invalid_argument
/// naming the key and context. Hypothesis violations surface as
/// std::invalid_argument from the instance factories.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

Domain parse_domain(const nlohmann::json& j);
ExponentField parse_exponent(const nlohmann::json& j);
TestFunction parse_function(const nlohmann::json& j);
InequalityInstance parse_instance(const nlohmann::json& j);

}  // namespace hp
