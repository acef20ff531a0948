// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "xmd/experiments/config.hpp"
#include "xmd/experiments/summary.hpp"

namespace xmd {

/// Runs fn(0..count-1) on up to `threads` workers (0: hardware concurrency). Each index
/// must write only its own slot; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, long threads, const std::function<void(std::size_t)>& fn);

/// Online estimation of (mu, sigma) for the Student-t family; one CSV (k, mu, sigma) per trajectory.
RunSummary run_student_t(const ExperimentConfig& cfg, OutputSet& out);
/// Online estimation for the Dirichlet perturbation model; one CSV (k, dist) per trajectory,
/// log-log slope and the lambda-independence comparison in the summary.
RunSummary run_dirichlet_online(const ExperimentConfig& cfg, OutputSet& out);
/// Conformal simplex descent for each alpha against multiplicative and entropic descent.
RunSummary run_simplex_compare(const ExperimentConfig& cfg, OutputSet& out);
/// flow-equivalence, geodesic-check or lyapunov-suite, by cfg.experiment.
RunSummary run_diagnostics(const ExperimentConfig& cfg, OutputSet& out);

/// Dispatches on cfg.experiment after validation and fills the wall time.
RunSummary run_experiment(const ExperimentConfig& cfg, OutputSet& out);

/// --out, then XMD_OUTPUT_DIR, then the config's output key.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag);

/// Loads, overrides, runs and writes. Returns the process exit code: 0 pass, 1 assertion
/// or runtime failure, 2 configuration error. Messages go to stderr.
int run_command(const std::string& experiment, const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::optional<std::string>& out_dir, const std::vector<std::string>& overrides);

/// Least-squares slope and intercept of y on x.
std::pair<double, double> least_squares_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace xmd
