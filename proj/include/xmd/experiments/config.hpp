// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xmd/core/types.hpp"

namespace xmd {

enum class Experiment { StudentTOnline, DirichletOnline, SimplexCompare, FlowEquivalence, GeodesicCheck, LyapunovSuite };

std::string to_string(Experiment e);
/// Throws ConfigError for an unknown name.
Experiment parse_experiment(const std::string& name);
const std::vector<Experiment>& all_experiments();

/// Bad configuration: unknown key, unparsable value, failed validation. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Flat key-value settings. Keys not used by an experiment are carried but ignored.
struct ExperimentConfig {
  Experiment experiment = Experiment::StudentTOnline;
  std::uint64_t seed = 1;
  long n_steps = 10000;
  long n_traj = 10;
  /// "auto" picks 1/k for the online estimators and 1/(n sqrt(k)) for the simplex descent.
  std::string delta_schedule = "auto";
  std::string output = "xmd-out";
  long threads = 0;  ///< 0: hardware concurrency
  bool check = true;  ///< evaluate pass/fail assertions

  // student-t-online
  double nu = 3.0;
  double mu_star = 1.0;
  double sigma_star = 1.5;
  double mu0 = -1.0;
  double sigma0 = 0.5;
  double max_error = 0.15;
  double median_error = 0.05;

  // dirichlet-online; lambda is also the curvature of the diagnostics instances
  long d = 50;
  double lambda = -0.3;
  double lambda_alt = -0.7;
  double target_concentration = 1.0;  ///< 0 puts p* at the barycenter
  long fit_k_min = 100;
  long fit_k_max = 10000;
  double slope_min = -0.65;
  double slope_max = -0.35;

  // simplex-compare
  long n = 20;
  std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::string> targets{"barycenter", "dirichlet(0.5)", "dirichlet(1)", "dirichlet(2)"};
  long n_inits = 12;
  double init_concentration = 5.0;
  bool init_at_target = false;  ///< start every run at p*, the zero-cost case

  // flow-equivalence, geodesic-check, lyapunov-suite
  double dt = 1e-4;
  double t_end = 1.0;
  double tol = 1e-4;
  std::string inject_fault = "none";  ///< none | dual_sign

  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults for an experiment, documented in the README.
ExperimentConfig default_config(Experiment e);

/// Sets one key from its textual value. Throws ConfigError.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
/// Parses "key=value".
void apply_override(ExperimentConfig& cfg, const std::string& assignment);
/// Reads a flat INI stream on top of the experiment's defaults. A top-level "experiment"
/// key, when present, must name the same experiment.
ExperimentConfig parse_config(Experiment e, std::istream& is);
ExperimentConfig load_config(Experiment e, const std::string& path);

/// Every key in a fixed order, one "key = value" line each, doubles at full precision.
std::string canonical_serialization(const ExperimentConfig& cfg);
std::vector<std::string> config_keys();

/// Range and consistency checks. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

}  // namespace xmd
