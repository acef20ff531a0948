// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "xmd/core/duality.hpp"
#include "xmd/core/generators.hpp"
#include "xmd/expfam/dirichlet_perturbation.hpp"
#include "xmd/expfam/escort.hpp"
#include "xmd/expfam/online.hpp"
#include "xmd/expfam/student_t.hpp"
#include "xmd/experiments/experiments.hpp"
#include "xmd/random/distributions.hpp"

using namespace xmd;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double max_seconds;
  std::function<Outcome()> run;
};

Vector v1(double a) { return Vector::Constant(1, a); }

std::string at_most(double v, double tol) { return fmt::format("{:.3g} (< {:g})", v, tol); }

RunSummary run_shipped(Experiment e) {
  const auto path = std::filesystem::path(XMD_SOURCE_DIR) / "configs" / (to_string(e) + ".ini");
  OutputSet out;
  return run_experiment(load_config(e, path.string()), out);
}

double metric_of(const RunSummary& s, const std::string& key) {
  auto it = s.metrics.find(key);
  return it == s.metrics.end() ? std::nan("") : it->second;
}

// Closed-form mirror maps of the one-dimensional examples, written out here as the oracle.
Outcome table_equivalence() {
  struct Row {
    Generator gen;
    std::function<double(double)> eta;
    double lo, hi;
  };
  double worst = 0.0;
  for (double lam : {-1.5, -0.5, 0.5, 2.0}) {
    const double r = 1.0 / std::sqrt(std::abs(lam));
    std::vector<Row> rows;
    rows.push_back({neg_half_log_generator(lam), [lam](double t) { return -1.0 / ((2.0 + lam) * t); }, 0.0, 10.0});
    if (lam > 0.0) rows.push_back({linear_generator(lam), [lam](double t) { return 1.0 / (1.0 - lam * t); }, -10.0, 1.0 / lam});
    rows.push_back({half_square_generator(lam), [lam](double t) { return t / (1.0 - lam * t * t); }, -r, r});
    for (const Row& row : rows)
      for (int i = 1; i <= 100; ++i) {
        const double t = row.lo + (row.hi - row.lo) * i / 101.0;
        const double generic = lambda_mirror(row.gen, v1(t)).eta[0];
        worst = std::max(worst, std::abs(generic - row.eta(t)) / std::max(1.0, std::abs(row.eta(t))));
      }
  }
  return {worst < 1e-10, "max |delta eta| " + at_most(worst, 1e-10)};
}

Outcome bregman_recovery() {
  const Generator b = half_square_generator(0.0);
  std::mt19937_64 gen(20240101);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  double worst_rel = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  int pairs = 0;
  while (pairs < 50) {
    const double x = u(gen), y = u(gen);
    // The first-order term is lambda (y (x - y))^2 / 2; pairs where it nearly vanishes have no
    // first-order error to measure.
    if (std::abs(y * (x - y)) < 1e-3) continue;
    ++pairs;
    const double bd = bregman_div(b, v1(x), v1(y));
    worst_rel = std::max(worst_rel, std::abs(log_div(half_square_generator(1e-2), v1(x), v1(y)) - bd) / bd);
    const double e3 = std::abs(log_div(half_square_generator(1e-3), v1(x), v1(y)) - bd);
    const double e4 = std::abs(log_div(half_square_generator(1e-4), v1(x), v1(y)) - bd);
    ratio_lo = std::min(ratio_lo, e3 / e4);
    ratio_hi = std::max(ratio_hi, e3 / e4);
  }
  const bool ok = worst_rel <= 0.01 && ratio_lo >= 8.0 && ratio_hi <= 12.0;
  return {ok, fmt::format("max |L-B|/B at 1e-2 {:.3g} (<= 0.01), error ratio in [{:.3f}, {:.3f}] (within [8, 12])",
                          worst_rel, ratio_lo, ratio_hi)};
}

Outcome metric_identity() {
  double rep = 0.0, inv = 0.0;
  auto probe = [&](const Generator& g, const Vector& th) {
    const MetricAtPoint m = metric(g, th);
    const double scale = std::max(1.0, m.g.norm());
    rep = std::max(rep, (m.g - metric_conformal_form(g, th)).norm() / scale);
    inv = std::max(inv, (m.g * m.g_inv - Matrix::Identity(th.size(), th.size())).norm());
  };
  for (double lam : {-1.5, -0.5, 0.5, 2.0})
    for (const Generator& g : closed_form_examples(lam)) {
      const double lo = std::isfinite(g.domain().lower()[0]) ? g.domain().lower()[0] : -5.0;
      const double hi = std::isfinite(g.domain().upper()[0]) ? g.domain().upper()[0] : 5.0;
      for (int i = 1; i < 50; ++i) probe(g, v1(lo + (hi - lo) * (0.02 + 0.96 * i / 50.0)));
    }
  for (double nu : {1.5, 3.0, 10.0}) {
    const Generator g = student_t_generator(nu);
    for (double mu = -2.0; mu <= 2.0; mu += 0.5)
      for (double sigma : {0.3, 0.7, 1.0, 1.8, 3.0}) probe(g, student_t_coords({mu, sigma, nu}));
  }
  return {rep < 1e-8 && inv < 1e-10, "representations " + at_most(rep, 1e-8) + ", G G^-1 - I " + at_most(inv, 1e-10)};
}

Outcome time_change() {
  const RunSummary s = run_shipped(Experiment::FlowEquivalence);
  const double dev = metric_of(s, "time_change_max_deviation");
  return {dev < 1e-4, "sup deviation " + at_most(dev, 1e-4)};
}

Outcome geodesics() {
  const RunSummary s = run_shipped(Experiment::GeodesicCheck);
  double worst = 0.0;
  bool ok = true;
  for (const char* inst : {"isotropic", "anisotropic"})
    for (const char* key : {"dual_collinearity", "dual_coefficient_error", "primal_collinearity"}) {
      const double v = metric_of(s, std::string(inst) + "." + key);
      ok = ok && v < 1e-6;
      worst = std::max(worst, v);
    }
  ok = ok && s.notes.empty();
  return {ok, "worst of dual collinearity, coefficient, primal collinearity " + at_most(worst, 1e-6)};
}

Outcome lyapunov() {
  const RunSummary s = run_shipped(Experiment::LyapunovSuite);
  double violations = 0.0, bound = 0.0;
  for (const char* suite : {"continuous_1d", "continuous_2d", "discrete"}) {
    violations += metric_of(s, std::string(suite) + ".lyapunov_violations");
    bound += metric_of(s, std::string(suite) + ".bound_violations");
  }
  return {violations == 0.0 && bound == 0.0,
          fmt::format("increases above 1e-9: {:g} (== 0), bound violations: {:g} (== 0)", violations, bound)};
}

Outcome student_t() {
  const RunSummary s = run_shipped(Experiment::StudentTOnline);
  const double mx = metric_of(s, "max_abs_error");
  const double mm = std::max(metric_of(s, "median_abs_error_mu"), metric_of(s, "median_abs_error_sigma"));
  return {mx < 0.15 && mm < 0.05, "max error " + at_most(mx, 0.15) + ", median " + at_most(mm, 0.05)};
}

Outcome dirichlet_rate() {
  const RunSummary s = run_shipped(Experiment::DirichletOnline);
  const double slope = metric_of(s, "slope");
  return {slope >= -0.65 && slope <= -0.35, fmt::format("slope {:.4f} (in [-0.65, -0.35])", slope)};
}

Outcome lambda_independence() {
  const Index d = 50;
  CounterRng target_rng(1, 99);
  const SimplexPoint p_star(symmetric_dirichlet_sample(d + 1, 1.0, target_rng));
  const DirichletPerturbModel model{p_star, 0.3};
  const LambdaExpFamily fa = dirichlet_family(d, -0.3), fb = dirichlet_family(d, -0.7);
  double worst = 0.0;
  for (std::uint64_t stream = 0; stream < 3; ++stream) {
    CounterRng rng(1, stream);
    OnlineState a = make_online_state(fa, dirichlet_theta(SimplexPoint::barycenter(d + 1), -0.3), harmonic_schedule());
    OnlineState b = make_online_state(fb, dirichlet_theta(SimplexPoint::barycenter(d + 1), -0.7), harmonic_schedule());
    for (int k = 1; k <= 10000; ++k) {
      const Vector y = dirichlet_statistics(dirichlet_perturb_sample(model, rng).weights());
      a = online_update(fa, a, y);
      b = online_update(fb, b, y);
      const Vector pa = dirichlet_p_from_eta(a.eta).weights(), pb = dirichlet_p_from_eta(b.eta).weights();
      worst = std::max(worst, (pa - pb).cwiseAbs().maxCoeff());
    }
  }
  return {worst < 1e-12, "max |p(-0.3) - p(-0.7)| " + at_most(worst, 1e-12)};
}

Outcome simplex_ordering() {
  const RunSummary s = run_shipped(Experiment::SimplexCompare);
  bool ok = true;
  std::string detail;
  for (const char* t : {"barycenter", "dirichlet(0.5)", "dirichlet(1)", "dirichlet(2)"}) {
    const double a = metric_of(s, std::string("mean_final_cost.") + t + ".alpha_0.9");
    const double e = metric_of(s, std::string("mean_final_cost.") + t + ".entropic");
    ok = ok && a < e;
    detail += fmt::format("{}{}: {:.3g} vs {:.3g}", detail.empty() ? "" : ", ", t, a, e);
  }
  return {ok, "alpha=0.9 vs entropic mean final cost " + detail};
}

Outcome fisher() {
  const StudentTParams p{1.0, 1.5, 3.0};
  const LambdaExpFamily fam = student_t_family(p.nu);
  const Vector th = student_t_coords(p);
  CounterRng rng(1, 0);
  const FisherReport r = fisher_metric_check(fam, th, 1000000, rng);
  const Matrix g = metric(student_t_generator(p.nu), th).g;
  const double rel = (g - (1.0 - p.lambda()) * r.fisher).norm() / g.norm();
  return {rel < 0.05, "|G - (1 - lambda) I| / |G| " + at_most(rel, 0.05)};
}

Outcome escort() {
  const Vector e = escort_expectation_numeric(StudentTParams{0.0, 1.0, 3.0});
  const double err = std::max(std::abs(e[0]), std::abs(e[1] - 1.0));
  return {err < 1e-4, "max |escort - (0, 1)| " + at_most(err, 1e-4)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form mirror maps", 1.0, table_equivalence},
      {2, "lambda -> 0 recovery", 1.0, bregman_recovery},
      {3, "metric identity", 1.0, metric_identity},
      {4, "time-change equivalence", 10.0, time_change},
      {5, "geodesic flows", 10.0, geodesics},
      {6, "Lyapunov suites", 30.0, lyapunov},
      {7, "Student-t online estimation", 60.0, student_t},
      {8, "Dirichlet online rate", 120.0, dirichlet_rate},
      {9, "lambda-independence", 10.0, lambda_independence},
      {10, "simplex comparison", 60.0, simplex_ordering},
      {11, "Fisher relation", 60.0, fisher},
      {12, "escort expectation", 5.0, escort},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && secs < c.max_seconds;
    failures += ok ? 0 : 1;
    fmt::print("{} {:2d} {}: {}; {:.2f} s (< {:g} s)\n", ok ? "PASS" : "FAIL", c.id, c.title, o.detail, secs,
               c.max_seconds);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
