// SPDX-License-Identifier: Apache-2.0
// xmd <experiment> --config <path> [--seed N] [--out DIR] [--override key=value]...
#include <CLI11.hpp>
#include <optional>
#include <string>
#include <vector>

#include "xmd/experiments/config.hpp"
#include "xmd/experiments/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Conformal mirror descent and lambda-exponential family experiments"};
  std::string experiment, config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;
  bool print_config = false;

  std::vector<std::string> names;
  for (auto e : xmd::all_experiments()) names.push_back(xmd::to_string(e));
  app.add_option("experiment", experiment, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Flat key = value configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--out", out_dir, "Output directory (takes precedence over XMD_OUTPUT_DIR and the config)");
  app.add_option("--override", overrides, "key=value, applied after the config file")->take_all();
  app.add_flag("--print-config", print_config, "Print the canonical configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (print_config) {
    try {
      auto cfg = xmd::load_config(xmd::parse_experiment(experiment), config_path);
      for (const auto& o : overrides) xmd::apply_override(cfg, o);
      if (seed) cfg.seed = *seed;
      xmd::validate(cfg);
      std::cout << xmd::canonical_serialization(cfg);
      return 0;
    } catch (const xmd::ConfigError& e) {
      std::cerr << "xmd: config error: " << e.what() << '\n';
      return 2;
    }
  }
  return xmd::run_command(experiment, config_path, seed, out_dir, overrides);
}
