#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dboltz/config.hpp"
#include "dboltz/errors.hpp"
#include "dboltz/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dissipative Boltzmann toolkit: DG solver, particle simulation and moment checks"};
  std::string config_path;
  dboltz::RunOptions options;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--replicates", options.replicates, "Independent seeds for particle modes")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides [run] seed)");
  app.add_flag("--quiet", options.quiet, "Suppress progress output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dboltz::exit_config;
  }
  if (*out_opt) options.out_dir = out_dir;
  if (*seed_opt) options.seed = seed;

  dboltz::RunConfig config;
  try {
    config = dboltz::load_config(config_path);
  } catch (const dboltz::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return dboltz::exit_config;
  } catch (const dboltz::IoError& e) {
    std::cerr << e.what() << '\n';
    return dboltz::exit_io;
  }
  return dboltz::run(config, options, std::cerr);
}
