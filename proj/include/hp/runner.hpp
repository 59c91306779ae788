#pragma once

#include "hp/config.hpp"

#include <set>
#include <string>

namespace hp {

struct RunOptions {
  std::string config_path;
  std::string output_dir;  // overrides the config when nonempty
  int workers = 0;         // 0 keeps the current setting
  std::optional<long> seed_override;
};

struct RunSummary {
  int exit_code = 2;
  int total_rows = 0;
  int failures = 0;
  double worst_ratio = 0.0;
  std::set<std::string> kinds_seen;
  std::string message;  // set when exit_code == 2
};

/// Executes the jobs in order, one CSV per job plus summary.json in the
/// output directory. CSV bodies are byte-identical across reruns;
/// timestamps live only in summary.json. Exit code 0: all rows pass,
/// 1: some verification failed, 2: config or hypothesis error.
RunSummary run_config(const RunOptions& options);

/// Resolves a job's first instance and prints the certified constant and
/// the inequality it instantiates, without running any quadrature.
std::string describe_job(const std::string& config_path,
                         const std::string& job_id);

}  // namespace hp
