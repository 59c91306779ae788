#include "hp/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"hp - certified Hardy-Poincare constants and their numerical "
               "verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string job_id;
  int workers = 0;
  long seed = 0;
  bool seed_set = false;

  CLI::App* run = app.add_subcommand("run", "execute the jobs of a config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_option("--jobs", workers,
                  "worker count (never affects numeric output)");
  run->add_option("--seed", seed, "seed recorded in the summary")
      ->each([&](const std::string&) { seed_set = true; });

  CLI::App* describe =
      app.add_subcommand("describe", "resolve one job without computing");
  describe->add_option("--config", config_path, "JSON config file")->required();
  describe->add_option("--job", job_id, "job id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      hp::RunOptions options;
      options.config_path = config_path;
      options.output_dir = out_dir;
      options.workers = workers;
      if (seed_set) options.seed_override = seed;
      const hp::RunSummary summary = hp::run_config(options);
      if (summary.exit_code == 2) {
        std::cerr << "error: " << summary.message << "\n";
      } else {
        std::cout << summary.total_rows << " rows, " << summary.failures
                  << " failures, worst ratio " << summary.worst_ratio << "\n";
        if (!summary.message.empty())
          std::cerr << "first failure: " << summary.message << "\n";
      }
      return summary.exit_code;
    }
    std::cout << hp::describe_job(config_path, job_id);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
