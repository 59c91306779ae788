#include "hp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& context) {
  if (!j.is_object()) fail(context + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      fail("unknown key '" + key + "' in " + context);
  }
}

double number_or_inf(const json& j, const std::string& context) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return inf;
    if (s == "-inf") return -inf;
  }
  fail(context + " must be a number or \"inf\"/\"-inf\"");
}

Vector parse_point(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) fail(context + " must be a nonempty array");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k)
    v[static_cast<int>(k)] = number_or_inf(j[k], context);
  return v;
}

double get_number(const json& j, const std::string& key,
                  const std::string& context) {
  if (!j.contains(key)) fail(context + " is missing '" + key + "'");
  if (!j[key].is_number()) fail(context + " key '" + key + "' must be a number");
  return j[key].get<double>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& context) {
  if (!j.contains(key)) fail(context + " is missing '" + key + "'");
  if (!j[key].is_string()) fail(context + " key '" + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace

Domain parse_domain(const json& j) {
  const std::string kind = get_string(j, "kind", "domain");
  if (kind == "box") {
    expect_keys(j, {"kind", "lo", "hi"}, "box domain");
    return Domain::box(parse_point(j.at("lo"), "box lo"),
                       parse_point(j.at("hi"), "box hi"));
  }
  if (kind == "ball") {
    expect_keys(j, {"kind", "center", "radius"}, "ball domain");
    return Domain::ball(parse_point(j.at("center"), "ball center"),
                        get_number(j, "radius", "ball domain"));
  }
  if (kind == "annulus") {
    expect_keys(j, {"kind", "center", "inner", "outer"}, "annulus domain");
    return Domain::annulus(parse_point(j.at("center"), "annulus center"),
                           get_number(j, "inner", "annulus domain"),
                           get_number(j, "outer", "annulus domain"));
  }
  if (kind == "strip") {
    expect_keys(j, {"kind", "sigma", "a", "b"}, "strip domain");
    return Domain::strip(Direction(parse_point(j.at("sigma"), "strip sigma")),
                         get_number(j, "a", "strip domain"),
                         get_number(j, "b", "strip domain"));
  }
  if (kind == "union") {
    expect_keys(j, {"kind", "members"}, "union domain");
    if (!j.contains("members") || !j["members"].is_array())
      fail("union domain needs a 'members' array");
    std::vector<Domain> members;
    for (const auto& m : j["members"]) members.push_back(parse_domain(m));
    return Domain::unite(std::move(members));
  }
  fail("unknown domain kind '" + kind + "'");
}

ExponentField parse_exponent(const json& j) {
  const std::string kind = get_string(j, "kind", "exponent");
  if (kind == "constant") {
    expect_keys(j, {"kind", "p"}, "constant exponent");
    return ExponentField::constant(get_number(j, "p", "constant exponent"));
  }
  if (kind == "radial") {
    expect_keys(j, {"kind", "center", "a", "b", "p_max"}, "radial exponent");
    return ExponentField::radial(parse_point(j.at("center"), "exponent center"),
                                 get_number(j, "a", "radial exponent"),
                                 get_number(j, "b", "radial exponent"),
                                 get_number(j, "p_max", "radial exponent"));
  }
  if (kind == "along") {
    expect_keys(j, {"kind", "sigma", "center", "a", "b", "p_max"},
                "along exponent");
    return ExponentField::along(
        Direction(parse_point(j.at("sigma"), "exponent sigma")),
        parse_point(j.at("center"), "exponent center"),
        get_number(j, "a", "along exponent"),
        get_number(j, "b", "along exponent"),
        get_number(j, "p_max", "along exponent"));
  }
  fail("unknown exponent kind '" + kind + "'");
}

TestFunction parse_function(const json& j) {
  const std::string kind = get_string(j, "kind", "function");
  TestFunction out = [&]() {
    if (kind == "bump") {
      expect_keys(j, {"kind", "center", "radius", "clamp", "translate"},
                  "bump function");
      return bump(parse_point(j.at("center"), "bump center"),
                  get_number(j, "radius", "bump function"));
    }
    if (kind == "tensor_bump") {
      expect_keys(j, {"kind", "lo", "hi", "clamp", "translate"},
                  "tensor bump function");
      return tensor_bump(Domain::box(parse_point(j.at("lo"), "tensor lo"),
                                     parse_point(j.at("hi"), "tensor hi")));
    }
    if (kind == "hardy") {
      expect_keys(j, {"kind", "N", "p", "eps", "delta", "R", "clamp",
                      "translate"},
                  "hardy function");
      return hardy_family(static_cast<int>(get_number(j, "N", "hardy function")),
                          get_number(j, "p", "hardy function"),
                          get_number(j, "eps", "hardy function"),
                          get_number(j, "delta", "hardy function"),
                          get_number(j, "R", "hardy function"));
    }
    fail("unknown function kind '" + kind + "'");
  }();
  if (j.contains("translate"))
    out = out.translated(parse_point(j.at("translate"), "function translate"));
  if (j.contains("clamp") && j["clamp"].get<bool>()) out = clamp_unit(out);
  return out;
}

InequalityInstance parse_instance(const json& j) {
  const std::string kind = get_string(j, "kind", "instance");
  if (!j.contains("domain")) fail("instance is missing 'domain'");
  const Domain domain = parse_domain(j.at("domain"));

  auto sigma = [&]() {
    return Direction(parse_point(j.at("sigma"), "instance sigma"));
  };
  auto x0 = [&]() -> Vector {
    if (j.contains("x0")) return parse_point(j.at("x0"), "instance x0");
    return Vector::Zero(domain.dimension());
  };

  if (kind == "directional_poincare") {
    expect_keys(j, {"kind", "domain", "p", "sigma"}, "instance");
    return InequalityInstance::directional_poincare(
        domain, get_number(j, "p", "instance"), sigma());
  }
  if (kind == "general_weighted") {
    expect_keys(j, {"kind", "domain", "p", "weight", "refined"}, "instance");
    const json& w = j.at("weight");
    expect_keys(w, {"lambda", "alpha", "beta", "x0"}, "weight");
    WeightParams params(get_number(w, "lambda", "weight"),
                        get_number(w, "alpha", "weight"),
                        get_number(w, "beta", "weight"),
                        parse_point(w.at("x0"), "weight x0"));
    const bool refined = j.contains("refined") && j["refined"].get<bool>();
    return InequalityInstance::general_weighted(
        domain, get_number(j, "p", "instance"), std::move(params), refined);
  }
  if (kind == "gamma_hardy") {
    expect_keys(j, {"kind", "domain", "p", "gamma", "x0"}, "instance");
    return InequalityInstance::gamma_hardy(domain,
                                           get_number(j, "p", "instance"),
                                           get_number(j, "gamma", "instance"),
                                           x0());
  }
  if (kind == "sharp_hardy") {
    expect_keys(j, {"kind", "domain", "p", "x0"}, "instance");
    return InequalityInstance::sharp_hardy(domain,
                                           get_number(j, "p", "instance"), x0());
  }
  if (kind == "dual_hardy_gamma") {
    expect_keys(j, {"kind", "domain", "p", "gamma", "x0"}, "instance");
    return InequalityInstance::dual_hardy_gamma(
        domain, get_number(j, "p", "instance"),
        get_number(j, "gamma", "instance"), x0());
  }
  if (kind == "dual_hardy_plain") {
    expect_keys(j, {"kind", "domain", "p", "x0"}, "instance");
    return InequalityInstance::dual_hardy_plain(
        domain, get_number(j, "p", "instance"), x0());
  }
  if (kind == "classical_poincare") {
    expect_keys(j, {"kind", "domain", "p"}, "instance");
    return InequalityInstance::classical_poincare(
        domain, get_number(j, "p", "instance"));
  }
  if (kind == "varexp_directional") {
    expect_keys(j, {"kind", "domain", "exponent", "sigma"}, "instance");
    return InequalityInstance::varexp_directional(
        domain, parse_exponent(j.at("exponent")), sigma());
  }
  if (kind == "varexp_radial") {
    expect_keys(j, {"kind", "domain", "exponent", "sigma"}, "instance");
    return InequalityInstance::varexp_radial(
        domain, parse_exponent(j.at("exponent")), sigma());
  }
  fail("unknown instance kind '" + kind + "'");
}

namespace {

GridSettings parse_grid(const json& j, const GridSettings& base) {
  expect_keys(j, {"n", "n_3d", "exclusion_multiplier"}, "grid settings");
  GridSettings g = base;
  if (j.contains("n")) g.n = static_cast<int>(get_number(j, "n", "grid"));
  if (j.contains("n_3d"))
    g.n_3d = static_cast<int>(get_number(j, "n_3d", "grid"));
  if (j.contains("exclusion_multiplier"))
    g.exclusion_multiplier = get_number(j, "exclusion_multiplier", "grid");
  return g;
}

JobSpec parse_job(const json& j, const GridSettings& base_grid) {
  expect_keys(j,
              {"id", "kind", "instance", "instances", "function", "functions",
               "clamp", "grid", "method", "n", "tol", "max_iter", "steps",
               "dump_function", "parameters", "radial", "radial_n", "family"},
              "job");
  JobSpec job;
  job.id = get_string(j, "id", "job");
  const std::string kind = get_string(j, "kind", "job");
  if (kind == "verify")
    job.kind = JobSpec::Kind::Verify;
  else if (kind == "sweep")
    job.kind = JobSpec::Kind::Sweep;
  else if (kind == "extremal")
    job.kind = JobSpec::Kind::Extremal;
  else if (kind == "sharpness")
    job.kind = JobSpec::Kind::Sharpness;
  else
    fail("unknown job kind '" + kind + "' in job '" + job.id + "'");

  job.grid = j.contains("grid") ? parse_grid(j.at("grid"), base_grid)
                                : base_grid;
  job.clamp = j.contains("clamp") && j["clamp"].get<bool>();

  if (j.contains("instance"))
    job.instances.push_back(parse_instance(j.at("instance")).with_label(job.id));
  if (j.contains("instances")) {
    int count = 0;
    for (const auto& spec : j.at("instances")) {
      std::ostringstream label;
      label << job.id << "/" << count++;
      job.instances.push_back(parse_instance(spec).with_label(label.str()));
    }
  }
  if (j.contains("function"))
    job.functions.push_back(parse_function(j.at("function")));
  if (j.contains("functions"))
    for (const auto& spec : j.at("functions"))
      job.functions.push_back(parse_function(spec));
  if (job.clamp)
    for (auto& u : job.functions) u = clamp_unit(u);

  if (j.contains("method")) job.method = get_string(j, "method", "job");
  if (j.contains("n")) job.extremal_n = static_cast<int>(get_number(j, "n", "job"));
  if (j.contains("tol")) job.tol = get_number(j, "tol", "job");
  if (j.contains("max_iter"))
    job.max_iter = static_cast<int>(get_number(j, "max_iter", "job"));
  if (j.contains("steps"))
    job.steps = static_cast<int>(get_number(j, "steps", "job"));
  if (j.contains("dump_function"))
    job.dump_function = j["dump_function"].get<bool>();
  if (j.contains("radial")) job.radial_fast = j["radial"].get<bool>();
  if (j.contains("radial_n"))
    job.radial_n = static_cast<int>(get_number(j, "radial_n", "job"));

  if (j.contains("family")) {
    const json& fam = j.at("family");
    const std::string fkind = get_string(fam, "kind", "family");
    if (fkind == "hardy") {
      expect_keys(fam, {"kind", "N", "p", "eps", "delta", "R"}, "hardy family");
      if (!fam.contains("eps") || !fam["eps"].is_array())
        fail("hardy family needs an 'eps' array");
      for (const auto& e : fam["eps"]) {
        const double eps = e.get<double>();
        job.functions.push_back(hardy_family(
            static_cast<int>(get_number(fam, "N", "family")),
            get_number(fam, "p", "family"), eps,
            get_number(fam, "delta", "family"), get_number(fam, "R", "family")));
        job.parameters.push_back(eps);
      }
    } else if (fkind == "bump_radius") {
      expect_keys(fam, {"kind", "center", "radii"}, "bump family");
      if (!fam.contains("radii") || !fam["radii"].is_array())
        fail("bump family needs a 'radii' array");
      for (const auto& r : fam["radii"]) {
        const double radius = r.get<double>();
        job.functions.push_back(
            bump(parse_point(fam.at("center"), "family center"), radius));
        job.parameters.push_back(radius);
      }
    } else {
      fail("unknown family kind '" + fkind + "'");
    }
  }
  if (j.contains("parameters")) {
    job.parameters.clear();
    for (const auto& v : j.at("parameters"))
      job.parameters.push_back(v.get<double>());
  }

  // basic shape checks up front
  if (job.kind == JobSpec::Kind::Verify &&
      (job.instances.size() != 1 || job.functions.size() != 1))
    fail("verify job '" + job.id + "' needs exactly one instance and function");
  if (job.kind == JobSpec::Kind::Sweep &&
      (job.instances.empty() || job.functions.empty()))
    fail("sweep job '" + job.id + "' needs instances and functions");
  if (job.kind == JobSpec::Kind::Extremal && job.instances.size() != 1)
    fail("extremal job '" + job.id + "' needs exactly one instance");
  if (job.kind == JobSpec::Kind::Sharpness) {
    if (job.instances.size() != 1)
      fail("sharpness job '" + job.id + "' needs exactly one instance");
    if (job.functions.empty())
      fail("sharpness job '" + job.id + "' needs a function family");
    if (job.parameters.size() != job.functions.size())
      fail("sharpness job '" + job.id + "' parameter/function count mismatch");
  }
  return job;
}

}  // namespace

RunConfig parse_config(const json& j) {
  expect_keys(j,
              {"seed", "output_dir", "grid", "grid_n", "grid_n_3d",
               "exclusion_multiplier", "jobs"},
              "config");
  RunConfig cfg;
  if (j.contains("seed")) cfg.seed = j["seed"].get<long>();
  if (j.contains("output_dir"))
    cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("grid_n"))
    cfg.grid.n = static_cast<int>(get_number(j, "grid_n", "config"));
  if (j.contains("grid_n_3d"))
    cfg.grid.n_3d = static_cast<int>(get_number(j, "grid_n_3d", "config"));
  if (j.contains("exclusion_multiplier"))
    cfg.grid.exclusion_multiplier =
        get_number(j, "exclusion_multiplier", "config");
  if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), cfg.grid);
  if (j.contains("jobs")) {
    if (!j["jobs"].is_array()) fail("'jobs' must be an array");
    std::set<std::string> ids;
    for (const auto& job : j["jobs"]) {
      cfg.jobs.push_back(parse_job(job, cfg.grid));
      if (!ids.insert(cfg.jobs.back().id).second)
        fail("duplicate job id '" + cfg.jobs.back().id + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace hp
