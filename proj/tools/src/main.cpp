#include "tansec/errors.hpp"
#include "tansec/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"tansec: local recovery of first-order perturbations from tangent sections and caps"};
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides the config)");
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "global seed (overrides the config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  tansec::ExperimentConfig cfg;
  try {
    cfg = tansec::load_config(config_path);
    if (*out_opt) cfg.output = out_dir;
    if (*jobs_opt) cfg.jobs = jobs;
    if (*seed_opt) cfg.seed = seed;
    tansec::build_family(cfg);
  } catch (const tansec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const tansec::Error& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return 2;
  }

  try {
    const tansec::RunResult r = tansec::run(cfg);
    std::cout << r.summary << " (report: " << cfg.output << "/report.json)\n";
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
