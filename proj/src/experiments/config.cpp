// SPDX-License-Identifier: Apache-2.0
#include "xmd/experiments/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "xmd/expfam/online.hpp"

namespace xmd {

namespace {

struct ExperimentName {
  Experiment e;
  const char* name;
};

constexpr ExperimentName kNames[] = {
    {Experiment::StudentTOnline, "student-t-online"}, {Experiment::DirichletOnline, "dirichlet-online"},
    {Experiment::SimplexCompare, "simplex-compare"},  {Experiment::FlowEquivalence, "flow-equivalence"},
    {Experiment::GeodesicCheck, "geodesic-check"},    {Experiment::LyapunovSuite, "lyapunov-suite"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
  throw ConfigError(fmt::format("config key '{}': cannot parse '{}' as {}", key, value, what));
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) bad_value(key, v, "an integer");
    return static_cast<long>(x);
  } catch (const std::logic_error&) {
    bad_value(key, v, "an integer");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v[0] == '-') bad_value(key, v, "an unsigned 64-bit integer");
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used, 0);
    if (used != v.size()) bad_value(key, v, "an unsigned 64-bit integer");
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, v, "an unsigned 64-bit integer");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) bad_value(key, v, "a finite number");
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, v, "a finite number");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  // Commas inside parentheses belong to the item, e.g. dirichlet(0.5).
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : v) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::string fmt_double(double x) { return fmt::format("{:.17g}", x); }

struct Field {
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define XMD_LONG(name) \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = parse_long(#name, v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.name); }}
#define XMD_DOUBLE(name) \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = parse_double(#name, v); }, \
        [](const ExperimentConfig& c) { return fmt_double(c.name); }}
#define XMD_STRING(name) \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = v; }, \
        [](const ExperimentConfig& c) { return c.name; }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      Field{"alphas",
            [](ExperimentConfig& c, const std::string& v) {
              c.alphas.clear();
              for (const auto& item : split_list(v)) c.alphas.push_back(parse_double("alphas", item));
            },
            [](const ExperimentConfig& c) {
              std::string s;
              for (std::size_t i = 0; i < c.alphas.size(); ++i) s += (i ? "," : "") + fmt_double(c.alphas[i]);
              return s;
            }},
      Field{"check", [](ExperimentConfig& c, const std::string& v) { c.check = parse_bool("check", v); },
            [](const ExperimentConfig& c) { return std::string(c.check ? "true" : "false"); }},
      XMD_LONG(d),
      XMD_STRING(delta_schedule),
      XMD_DOUBLE(dt),
      Field{"experiment", [](ExperimentConfig& c, const std::string& v) { c.experiment = parse_experiment(v); },
            [](const ExperimentConfig& c) { return to_string(c.experiment); }},
      XMD_LONG(fit_k_max),
      XMD_LONG(fit_k_min),
      Field{"init_at_target",
            [](ExperimentConfig& c, const std::string& v) { c.init_at_target = parse_bool("init_at_target", v); },
            [](const ExperimentConfig& c) { return std::string(c.init_at_target ? "true" : "false"); }},
      XMD_DOUBLE(init_concentration),
      XMD_STRING(inject_fault),
      XMD_DOUBLE(lambda),
      XMD_DOUBLE(lambda_alt),
      XMD_DOUBLE(max_error),
      XMD_DOUBLE(median_error),
      XMD_DOUBLE(mu0),
      XMD_DOUBLE(mu_star),
      XMD_LONG(n),
      XMD_LONG(n_inits),
      XMD_LONG(n_steps),
      XMD_LONG(n_traj),
      XMD_DOUBLE(nu),
      XMD_STRING(output),
      Field{"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); },
            [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      XMD_DOUBLE(sigma0),
      XMD_DOUBLE(sigma_star),
      XMD_DOUBLE(slope_max),
      XMD_DOUBLE(slope_min),
      XMD_DOUBLE(t_end),
      XMD_DOUBLE(target_concentration),
      Field{"targets", [](ExperimentConfig& c, const std::string& v) { c.targets = split_list(v); },
            [](const ExperimentConfig& c) {
              std::string s;
              for (std::size_t i = 0; i < c.targets.size(); ++i) s += (i ? "," : "") + c.targets[i];
              return s;
            }},
      XMD_LONG(threads),
      XMD_DOUBLE(tol),
  };
  return table;
}

#undef XMD_LONG
#undef XMD_DOUBLE
#undef XMD_STRING

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& n : kNames)
    if (n.e == e) return n.name;
  throw InvalidArgument("unknown experiment enum value");
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.e;
  throw ConfigError("unknown experiment '" + name + "'");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (const auto& n : kNames) v.push_back(n.e);
    return v;
  }();
  return all;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::StudentTOnline:
      c.n_steps = 10000;
      c.n_traj = 10;
      break;
    case Experiment::DirichletOnline:
      c.n_steps = 10000;
      c.n_traj = 30;
      break;
    case Experiment::SimplexCompare:
      c.n_steps = 1000;
      c.n_traj = 1;
      break;
    case Experiment::FlowEquivalence:
      c.lambda = 1.0;
      c.dt = 1e-4;
      c.t_end = 1.0;
      c.tol = 1e-4;
      c.n_traj = 1;
      break;
    case Experiment::GeodesicCheck:
      c.lambda = -0.5;
      c.dt = 1e-3;
      c.t_end = 2.0;
      c.tol = 1e-6;
      c.n_traj = 1;
      break;
    case Experiment::LyapunovSuite:
      c.lambda = -0.5;
      c.dt = 1e-3;
      c.t_end = 5.0;
      c.tol = 1e-9;
      c.n_steps = 10000;
      c.n_traj = 1;
      break;
  }
  return c;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.emplace_back(f.key);
  return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& f : fields())
    if (key == f.key) {
      f.set(cfg, trim(value));
      return;
    }
  throw ConfigError("unknown config key '" + key + "'");
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  set_config_value(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(Experiment e, std::istream& is) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& err) {
    throw ConfigError(std::string("config syntax: ") + err.what());
  }
  ExperimentConfig cfg = default_config(e);
  for (const auto& [key, node] : tree) {
    if (!node.empty()) throw ConfigError("config sections are not supported ('[" + key + "]')");
    const std::string value = node.get_value<std::string>();
    if (key == "experiment") {
      if (parse_experiment(trim(value)) != e)
        throw ConfigError("config is for '" + trim(value) + "' but '" + to_string(e) + "' was requested");
      continue;
    }
    set_config_value(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_config(Experiment e, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(e, in);
}

std::string canonical_serialization(const ExperimentConfig& cfg) {
  std::ostringstream os;
  for (const auto& f : fields()) os << f.key << " = " << f.get(cfg) << '\n';
  return os.str();
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("invalid config: " + msg);
  };
  require(c.n_steps >= 0, "n_steps must be nonnegative");
  require(c.n_traj >= 1, "n_traj must be positive");
  require(c.threads >= 0, "threads must be nonnegative");
  require(!c.output.empty(), "output must not be empty");
  require(c.inject_fault == "none" || c.inject_fault == "dual_sign", "inject_fault must be none or dual_sign");
  if (c.delta_schedule != "auto") {
    try {
      (void)parse_schedule(c.delta_schedule);
    } catch (const Error& e) {
      throw ConfigError(std::string("invalid config: ") + e.what());
    }
  }
  switch (c.experiment) {
    case Experiment::StudentTOnline:
      require(c.nu > 0.0, "nu must be positive");
      require(c.sigma_star > 0.0 && c.sigma0 > 0.0, "scales must be positive");
      break;
    case Experiment::DirichletOnline:
      require(c.d >= 1, "d must be positive");
      require(c.lambda < 0.0 && c.lambda_alt < 0.0, "lambda and lambda_alt must be negative");
      require(c.target_concentration >= 0.0, "target_concentration must be nonnegative");
      require(c.fit_k_min >= 1 && c.fit_k_min < c.fit_k_max, "need 1 <= fit_k_min < fit_k_max");
      require(c.slope_min < c.slope_max, "need slope_min < slope_max");
      break;
    case Experiment::SimplexCompare:
      require(c.n >= 2, "n must be at least 2");
      require(!c.alphas.empty(), "alphas must not be empty");
      for (double a : c.alphas) require(a >= 0.0 && a < 1.0, "alphas must lie in [0, 1)");
      require(!c.targets.empty(), "targets must not be empty");
      for (const auto& t : c.targets) {
        if (t == "barycenter") continue;
        const bool shaped = t.rfind("dirichlet(", 0) == 0 && t.back() == ')';
        require(shaped, "target '" + t + "' is not barycenter or dirichlet(a)");
        const double a = parse_double("targets", t.substr(10, t.size() - 11));
        require(a > 0.0, "target concentration must be positive");
      }
      require(c.n_inits >= 1, "n_inits must be positive");
      require(c.init_concentration > 0.0, "init_concentration must be positive");
      break;
    case Experiment::FlowEquivalence:
      require(c.lambda > -2.0 && c.lambda != 0.0, "lambda must exceed -2 and be nonzero");
      [[fallthrough]];
    case Experiment::GeodesicCheck:
    case Experiment::LyapunovSuite:
      require(c.dt > 0.0 && c.t_end > 0.0 && c.dt <= c.t_end, "need 0 < dt <= t_end");
      require(c.tol > 0.0, "tol must be positive");
      break;
  }
}

}  // namespace xmd
