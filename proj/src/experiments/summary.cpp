// SPDX-License-Identifier: Apache-2.0
#include "xmd/experiments/summary.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "xmd/core/types.hpp"

namespace xmd {

bool RunSummary::passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

void RunSummary::check(const std::string& name, bool ok, double value, const std::string& relation) {
  assertions.push_back(Assertion{name, ok, value, relation});
}

std::string RunSummary::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["wall_time_s"] = wall_time_s;
  j["passed"] = passed();
  auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metrics) m[k] = finite_or_null(v);
  j["metrics"] = m;
  nlohmann::ordered_json n = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes) n[k] = v;
  j["notes"] = n;
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& as : assertions)
    a.push_back({{"name", as.name}, {"passed", as.passed}, {"value", finite_or_null(as.value)}, {"relation", as.relation}});
  j["assertions"] = a;
  j["manifest"] = manifest;
  return j.dump(2) + "\n";
}

void OutputSet::add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

void OutputSet::write(const std::filesystem::path& dir, RunSummary& summary) const {
  std::filesystem::create_directories(dir);
  summary.manifest.clear();
  for (const auto& [name, content] : files_) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write output file '" + (dir / name).string() + "'");
    out << content;
    summary.manifest.push_back(name);
  }
  std::ofstream js(dir / "summary.json", std::ios::binary);
  if (!js) throw Error("cannot write summary.json in '" + dir.string() + "'");
  js << summary.to_json();
}

}  // namespace xmd
