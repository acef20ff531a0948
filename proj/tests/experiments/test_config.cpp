#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "xmd/experiments/config.hpp"
#include "xmd/experiments/experiments.hpp"

using namespace xmd;

namespace {

ExperimentConfig parse(Experiment e, const std::string& text) {
  std::istringstream is(text);
  return parse_config(e, is);
}

}  // namespace

TEST_CASE("experiment names round-trip") {
  for (Experiment e : all_experiments()) CHECK(parse_experiment(to_string(e)) == e);
  CHECK(all_experiments().size() == 6);
  CHECK_THROWS_AS(parse_experiment("student-t"), ConfigError);
}

TEST_CASE("canonical serialization round-trips for every experiment") {
  for (Experiment e : all_experiments()) {
    const ExperimentConfig d = default_config(e);
    const std::string text = canonical_serialization(d);
    const ExperimentConfig back = parse(e, text);
    CHECK(back == d);
    CHECK(canonical_serialization(back) == text);
  }
}

TEST_CASE("canonical serialization round-trips edited values exactly") {
  ExperimentConfig c = default_config(Experiment::SimplexCompare);
  c.seed = 18446744073709551615ull;
  c.alphas = {0.0, 0.1, 1.0 / 3.0};
  c.targets = {"dirichlet(0.25)", "barycenter"};
  c.tol = 1e-300;
  c.init_at_target = true;
  c.check = false;
  const std::string text = canonical_serialization(c);
  const ExperimentConfig back = parse(Experiment::SimplexCompare, text);
  CHECK(back == c);
  CHECK(back.alphas[2] == 1.0 / 3.0);
  CHECK(canonical_serialization(back) == text);
}

TEST_CASE("canonical serialization lists every key once, in a fixed order") {
  const std::string text = canonical_serialization(default_config(Experiment::StudentTOnline));
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> keys;
  while (std::getline(is, line)) keys.push_back(line.substr(0, line.find(" = ")));
  CHECK(keys == config_keys());
}

TEST_CASE("config file on top of defaults") {
  const ExperimentConfig c = parse(Experiment::DirichletOnline,
                                   "# comment\nexperiment = dirichlet-online\nd = 7\nlambda = -0.5\nseed = 42\n");
  CHECK(c.d == 7);
  CHECK(c.lambda == -0.5);
  CHECK(c.seed == 42);
  CHECK(c.n_traj == default_config(Experiment::DirichletOnline).n_traj);
}

TEST_CASE("lists split on top-level commas only") {
  const ExperimentConfig c = parse(Experiment::SimplexCompare, "targets = barycenter, dirichlet(0.5) ,dirichlet(2)\n");
  REQUIRE(c.targets.size() == 3);
  CHECK(c.targets[0] == "barycenter");
  CHECK(c.targets[1] == "dirichlet(0.5)");
  CHECK(c.targets[2] == "dirichlet(2)");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "no_such_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "[student]\nnu = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "experiment = dirichlet-online\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "nu = three\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "n_steps = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse(Experiment::StudentTOnline, "check = maybe\n"), ConfigError);
  CHECK_THROWS_AS(load_config(Experiment::StudentTOnline, "/nonexistent/xmd.ini"), ConfigError);
}

TEST_CASE("overrides") {
  ExperimentConfig c = default_config(Experiment::StudentTOnline);
  apply_override(c, "nu=5");
  apply_override(c, " sigma0 = 2 ");
  CHECK(c.nu == 5.0);
  CHECK(c.sigma0 == 2.0);
  CHECK_THROWS_AS(apply_override(c, "nu"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "bogus=1"), ConfigError);
}

TEST_CASE("validation") {
  auto bad = [](Experiment e, const std::string& kv) {
    ExperimentConfig c = default_config(e);
    apply_override(c, kv);
    CHECK_THROWS_AS(validate(c), ConfigError);
  };
  for (Experiment e : all_experiments()) CHECK_NOTHROW(validate(default_config(e)));
  bad(Experiment::StudentTOnline, "nu=0");
  bad(Experiment::StudentTOnline, "sigma0=-1");
  bad(Experiment::StudentTOnline, "n_steps=-1");
  bad(Experiment::StudentTOnline, "delta_schedule=k");
  bad(Experiment::DirichletOnline, "lambda=0.3");
  bad(Experiment::DirichletOnline, "fit_k_min=0");
  bad(Experiment::SimplexCompare, "alphas=0,1");
  bad(Experiment::SimplexCompare, "targets=dirichlet(0)");
  bad(Experiment::SimplexCompare, "targets=uniform");
  bad(Experiment::GeodesicCheck, "dt=0");
  bad(Experiment::LyapunovSuite, "inject_fault=other");
}

TEST_CASE("output directory precedence") {
  ExperimentConfig c = default_config(Experiment::StudentTOnline);
  c.output = "from-config";
  unsetenv("XMD_OUTPUT_DIR");
  CHECK(resolve_output_dir(c, std::nullopt) == "from-config");
  setenv("XMD_OUTPUT_DIR", "from-env", 1);
  CHECK(resolve_output_dir(c, std::nullopt) == "from-env");
  CHECK(resolve_output_dir(c, std::string("from-flag")) == "from-flag");
  unsetenv("XMD_OUTPUT_DIR");
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw DomainError("boom");
                  }),
                  DomainError);
}

TEST_CASE("least squares fit of an exact line") {
  const auto [slope, intercept] = least_squares_fit({1, 2, 3, 4}, {1.5, 1.0, 0.5, 0.0});
  CHECK(slope == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(intercept == doctest::Approx(2.0).epsilon(1e-14));
}
