// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "xmd/experiments/experiments.hpp"

namespace xmd {

void parallel_for(std::size_t count, long threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

RunSummary run_experiment(const ExperimentConfig& cfg, OutputSet& out) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunSummary sum;
  switch (cfg.experiment) {
    case Experiment::StudentTOnline:
      sum = run_student_t(cfg, out);
      break;
    case Experiment::DirichletOnline:
      sum = run_dirichlet_online(cfg, out);
      break;
    case Experiment::SimplexCompare:
      sum = run_simplex_compare(cfg, out);
      break;
    default:
      sum = run_diagnostics(cfg, out);
      break;
  }
  sum.experiment = to_string(cfg.experiment);
  sum.seed = cfg.seed;
  sum.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.add("config.ini", canonical_serialization(cfg));
  return sum;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag) {
  if (out_flag && !out_flag->empty()) return *out_flag;
  if (const char* env = std::getenv("XMD_OUTPUT_DIR"); env && *env) return env;
  return cfg.output;
}

int run_command(const std::string& experiment, const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::optional<std::string>& out_dir, const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  try {
    const Experiment e = parse_experiment(experiment);
    cfg = config_path.empty() ? default_config(e) : load_config(e, config_path);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (seed) cfg.seed = *seed;
    if (cfg.experiment != e) throw ConfigError("the experiment key cannot be overridden");
    validate(cfg);
  } catch (const ConfigError& err) {
    std::cerr << "xmd: config error: " << err.what() << '\n';
    return 2;
  }
  try {
    OutputSet out;
    RunSummary sum = run_experiment(cfg, out);
    const std::filesystem::path dir = resolve_output_dir(cfg, out_dir);
    out.write(dir, sum);
    for (const auto& a : sum.assertions)
      std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.value << ' ' << a.relation << '\n';
    std::cout << sum.experiment << ": " << (sum.passed() ? "passed" : "FAILED") << " in " << sum.wall_time_s
              << " s, output in " << dir.string() << '\n';
    return sum.passed() ? 0 : 1;
  } catch (const ConfigError& err) {
    std::cerr << "xmd: config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "xmd: run failed: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace xmd
