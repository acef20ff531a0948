// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace xmd {

struct Assertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string relation;  ///< e.g. "< 0.05" or "in [-0.65, -0.35]"
};

struct RunSummary {
  std::string experiment;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> notes;
  std::vector<Assertion> assertions;
  std::vector<std::string> manifest;  ///< file names relative to the output directory

  bool passed() const;
  void check(const std::string& name, bool ok, double value, const std::string& relation);
  std::string to_json() const;
};

/// Files produced by an experiment, held in memory until the run finishes so that a single
/// writer emits them in a fixed order.
class OutputSet {
 public:
  void add(std::string name, std::string content);
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }
  /// Writes every file plus summary.json into dir and fills the manifest.
  void write(const std::filesystem::path& dir, RunSummary& summary) const;

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace xmd
