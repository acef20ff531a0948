// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "xmd/expfam/dirichlet_perturbation.hpp"
#include "xmd/expfam/online.hpp"
#include "xmd/experiments/experiments.hpp"
#include "xmd/random/distributions.hpp"

namespace xmd {

namespace {

constexpr std::uint64_t kTargetStream = std::numeric_limits<std::uint64_t>::max();

}  // namespace

std::pair<double, double> least_squares_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("least_squares_fit: need two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("least_squares_fit: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

RunSummary run_dirichlet_online(const ExperimentConfig& cfg, OutputSet& out) {
  const Index d = cfg.d;
  const double lam = cfg.lambda;
  CounterRng target_rng(cfg.seed, kTargetStream);
  const SimplexPoint p_star = cfg.target_concentration > 0.0
                                  ? SimplexPoint(symmetric_dirichlet_sample(d + 1, cfg.target_concentration, target_rng))
                                  : SimplexPoint::barycenter(d + 1);
  const Vector eta_star = dirichlet_eta(p_star);
  const DirichletPerturbModel model{p_star, -lam};
  const LambdaExpFamily fam = dirichlet_family(d, lam);
  const Vector theta0 = dirichlet_theta(SimplexPoint::barycenter(d + 1), lam);
  const DeltaSchedule schedule = cfg.delta_schedule == "auto" ? harmonic_schedule() : parse_schedule(cfg.delta_schedule);
  const auto n_traj = static_cast<std::size_t>(cfg.n_traj);

  struct Result {
    std::vector<double> dist;
    long skipped = 0, reflections = 0;
  };
  std::vector<Result> results(n_traj);
  parallel_for(n_traj, cfg.threads, [&](std::size_t i) {
    CounterRng rng(cfg.seed, i);
    OnlineState s = make_online_state(fam, theta0, schedule);
    Result r;
    r.dist.reserve(static_cast<std::size_t>(cfg.n_steps) + 1);
    r.dist.push_back(dual_log_distance(s.eta, eta_star));
    for (long k = 1; k <= cfg.n_steps; ++k) {
      const Vector y = dirichlet_statistics(dirichlet_perturb_sample(model, rng).weights());
      s = online_update(fam, s, y);
      r.dist.push_back(dual_log_distance(s.eta, eta_star));
    }
    r.skipped = s.skipped;
    r.reflections = s.reflections;
    results[i] = std::move(r);
  });

  RunSummary sum;
  long skipped = 0, reflections = 0;
  std::vector<double> lx, ly;
  const long k_hi = std::min(cfg.fit_k_max, cfg.n_steps);
  bool fit_ok = true;
  double final_mean = 0.0;
  for (std::size_t i = 0; i < n_traj; ++i) {
    const auto& dist = results[i].dist;
    std::string csv = "k,dist\n";
    for (std::size_t k = 0; k < dist.size(); ++k) csv += fmt::format("{},{:.17g}\n", k, dist[k]);
    out.add(fmt::format("dirichlet_traj_{:03d}.csv", i), std::move(csv));
    for (long k = cfg.fit_k_min; k <= k_hi; ++k) {
      const double v = dist[static_cast<std::size_t>(k)];
      if (!(v > 0.0)) {
        fit_ok = false;
        continue;
      }
      lx.push_back(std::log10(static_cast<double>(k)));
      ly.push_back(std::log10(v));
    }
    skipped += results[i].skipped;
    reflections += results[i].reflections;
    final_mean += dist.back() / static_cast<double>(n_traj);
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (fit_ok && lx.size() >= 2) slope = least_squares_fit(lx, ly).first;
  sum.metrics["slope"] = slope;
  sum.metrics["final_mean_dist"] = final_mean;
  sum.metrics["initial_dist"] = results.front().dist.front();
  sum.metrics["skipped_updates"] = static_cast<double>(skipped);
  sum.metrics["reflections"] = static_cast<double>(reflections);
  sum.notes["fit_range"] = fmt::format("k in [{}, {}]", cfg.fit_k_min, k_hi);

  // Same observations, two values of lambda, compared in p coordinates.
  std::vector<Vector> ys;
  {
    CounterRng rng(cfg.seed, 0);
    for (long k = 1; k <= cfg.n_steps; ++k) ys.push_back(dirichlet_statistics(dirichlet_perturb_sample(model, rng).weights()));
  }
  auto p_path = [&](double l) {
    const LambdaExpFamily f = dirichlet_family(d, l);
    OnlineState s = make_online_state(f, dirichlet_theta(SimplexPoint::barycenter(d + 1), l), schedule);
    std::vector<Vector> path;
    for (const auto& y : ys) {
      s = online_update(f, s, y);
      path.push_back(dirichlet_p_from_eta(s.eta).weights());
    }
    return path;
  };
  const auto a = p_path(lam), b = p_path(cfg.lambda_alt);
  double indep = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) indep = std::max(indep, (a[k] - b[k]).lpNorm<Eigen::Infinity>());
  sum.metrics["lambda_independence_max_diff"] = indep;

  if (cfg.check && cfg.n_steps > 0) {
    sum.check("log-log slope of dist(eta_k, eta*)", slope >= cfg.slope_min && slope <= cfg.slope_max, slope,
              fmt::format("in [{}, {}]", cfg.slope_min, cfg.slope_max));
    sum.check(fmt::format("p-trajectories at lambda {} and {}", lam, cfg.lambda_alt), indep < 1e-12, indep,
              "< 1e-12");
  }
  return sum;
}

}  // namespace xmd
