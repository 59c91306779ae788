#include "hp/runner.hpp"

#include "hp/extremal.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_grid_function(const fs::path& stem, const GridFunction& g) {
  {
    std::ofstream bin(stem.string() + ".bin", std::ios::binary);
    bin.write(reinterpret_cast<const char*>(g.values.data()),
              static_cast<std::streamsize>(g.values.size() * sizeof(double)));
  }
  json side;
  side["shape"] = json::array();
  for (int k = 0; k < g.dimension(); ++k) side["shape"].push_back(g.n - 1);
  side["spacing"] = json::array();
  const Vector h = g.spacing();
  for (int k = 0; k < g.dimension(); ++k) side["spacing"].push_back(h[k]);
  side["origin"] = json::array();
  for (int k = 0; k < g.dimension(); ++k)
    side["origin"].push_back(g.lo[k] + h[k]);  // first interior node
  side["order"] = "first axis fastest";
  std::ofstream meta(stem.string() + ".json");
  meta << side.dump(2) << "\n";
}

std::vector<VerificationReport> run_job(const JobSpec& job,
                                        std::optional<GridFunction>& dump) {
  switch (job.kind) {
    case JobSpec::Kind::Verify:
    case JobSpec::Kind::Sweep:
      return sweep(job.instances, job.functions, job.grid);
    case JobSpec::Kind::Extremal: {
      const InequalityInstance& inst = job.instances.front();
      ExtremalResult result =
          job.method == "ascent"
              ? ratio_ascent(inst, job.functions.empty()
                                       ? bump(Vector::Zero(inst.dimension()),
                                              1.0)
                                       : job.functions.front(),
                             job.extremal_n, job.steps)
              : optimal_constant_p2(inst, job.extremal_n, job.tol,
                                    job.max_iter);
      auto rows = extremal_reports(inst, result, job.id, job.extremal_n);
      if (job.dump_function && !result.best.values.empty()) {
        rows.front().params += ";dump=" + job.id;
        dump = std::move(result.best);
      }
      return rows;
    }
    case JobSpec::Kind::Sharpness: {
      const InequalityInstance& inst = job.instances.front();
      const ExtremalResult result =
          sharpness_report(inst, job.functions, job.parameters,
                           job.radial_fast, job.radial_n, job.grid);
      return extremal_reports(inst, result, job.id, job.radial_fast
                                                        ? job.radial_n
                                                        : job.grid.n);
    }
  }
  return {};
}

}  // namespace

RunSummary run_config(const RunOptions& options) {
  RunSummary summary;
  RunConfig cfg;
  try {
    cfg = load_config(options.config_path);
    if (!options.output_dir.empty()) cfg.output_dir = options.output_dir;
    if (options.seed_override) cfg.seed = *options.seed_override;
    if (options.workers > 0) set_worker_count(options.workers);
    fs::create_directories(cfg.output_dir);
  } catch (const std::exception& e) {
    summary.exit_code = 2;
    summary.message = e.what();
    return summary;
  }

  json job_summaries = json::array();
  const auto t_start = std::chrono::steady_clock::now();
  for (const JobSpec& job : cfg.jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationReport> rows;
    try {
      std::optional<GridFunction> dump;
      rows = run_job(job, dump);
      if (dump) write_grid_function(fs::path(cfg.output_dir) / job.id, *dump);
    } catch (const std::exception& e) {
      summary.exit_code = 2;
      summary.message = "job '" + job.id + "': " + e.what();
      return summary;
    }
    const auto t1 = std::chrono::steady_clock::now();

    std::ofstream csv(fs::path(cfg.output_dir) / (job.id + ".csv"),
                      std::ios::binary);
    csv << csv_header() << "\n";
    int failures = 0;
    double worst = 0.0;
    for (const VerificationReport& r : rows) {
      csv << csv_row(r) << "\n";
      if (!r.pass) ++failures;
      if (std::isfinite(r.ratio)) worst = std::max(worst, r.ratio);
      summary.kinds_seen.insert(r.kind_label.empty() ? to_string(r.kind)
                                                     : r.kind_label);
      if (!r.error.empty() && summary.message.empty())
        summary.message = r.instance_id + ": " + r.error;
    }
    summary.total_rows += static_cast<int>(rows.size());
    summary.failures += failures;
    summary.worst_ratio = std::max(summary.worst_ratio, worst);

    json js;
    js["id"] = job.id;
    js["rows"] = rows.size();
    js["failures"] = failures;
    js["worst_ratio"] = worst;
    js["elapsed_seconds"] =
        std::chrono::duration<double>(t1 - t0).count();
    job_summaries.push_back(std::move(js));
  }

  json out;
  out["seed"] = cfg.seed;
  out["jobs"] = std::move(job_summaries);
  out["total_rows"] = summary.total_rows;
  out["total_failures"] = summary.failures;
  out["worst_ratio"] = summary.worst_ratio;
  out["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  out["generated_at"] = iso_timestamp();
  std::ofstream js(fs::path(cfg.output_dir) / "summary.json", std::ios::binary);
  js << out.dump(2) << "\n";

  summary.exit_code = summary.failures > 0 ? 1 : 0;
  return summary;
}

std::string describe_job(const std::string& config_path,
                         const std::string& job_id) {
  const RunConfig cfg = load_config(config_path);
  for (const JobSpec& job : cfg.jobs) {
    if (job.id != job_id) continue;
    if (job.instances.empty())
      throw std::invalid_argument("job '" + job_id + "' has no instances");
    std::ostringstream os;
    for (const InequalityInstance& inst : job.instances) {
      os << "instance: " << to_string(inst.kind()) << "\n";
      os << "  inequality: ";
      switch (inst.kind()) {
        case InstanceKind::DirectionalPoincare:
          os << "directional Poincare (modular form, constant (p c)^p)";
          break;
        case InstanceKind::GeneralWeighted:
          os << "weighted Hardy-Poincare (constant (p/k)^p)";
          break;
        case InstanceKind::GammaHardy:
          os << "singular-weight Hardy (constant (p/(N-gamma))^p)";
          break;
        case InstanceKind::SharpHardy:
          os << "sharp Hardy (constant (p/(N-p))^p)";
          break;
        case InstanceKind::DualHardyGamma:
        case InstanceKind::DualHardyPlain:
          os << "dual Hardy (constant (p/N)^p)";
          break;
        case InstanceKind::ClassicalPoincare:
          os << "classical Poincare (constant ((p/N) c)^p)";
          break;
        case InstanceKind::VarExpDirectional:
          os << "variable-exponent directional Poincare (modular)";
          break;
        case InstanceKind::VarExpRadial:
          os << "variable-exponent radial Poincare (modular, sup|u| <= 1)";
          break;
      }
      os << "\n  N: " << inst.dimension()
         << "\n  exponent: " << inst.exponent().describe()
         << "\n  params: " << inst.describe_params()
         << "\n  certified constant: " << certified_constant_for(inst) << "\n";
    }
    return os.str();
  }
  throw std::invalid_argument("no job with id '" + job_id + "'");
}

}  // namespace hp
