// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "xmd/expfam/online.hpp"
#include "xmd/expfam/student_t.hpp"
#include "xmd/experiments/experiments.hpp"

namespace xmd {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

DeltaSchedule online_schedule(const ExperimentConfig& cfg) {
  return cfg.delta_schedule == "auto" ? harmonic_schedule() : parse_schedule(cfg.delta_schedule);
}

}  // namespace

RunSummary run_student_t(const ExperimentConfig& cfg, OutputSet& out) {
  const StudentTParams truth{cfg.mu_star, cfg.sigma_star, cfg.nu};
  const StudentTParams start{cfg.mu0, cfg.sigma0, cfg.nu};
  const LambdaExpFamily fam = student_t_family(cfg.nu);
  const DeltaSchedule schedule = online_schedule(cfg);
  const auto n_traj = static_cast<std::size_t>(cfg.n_traj);

  struct Result {
    std::string csv;
    double mu_err = 0.0, sigma_err = 0.0;
    long skipped = 0, reflections = 0;
  };
  std::vector<Result> results(n_traj);
  parallel_for(n_traj, cfg.threads, [&](std::size_t i) {
    CounterRng rng(cfg.seed, i);
    OnlineState s = make_online_state(fam, student_t_coords(start), schedule);
    std::string csv = "k,mu,sigma\n";
    auto row = [&](long k) {
      const StudentTParams p = student_t_params_from_eta(s.eta, cfg.nu);
      csv += fmt::format("{},{:.17g},{:.17g}\n", k, p.mu, p.sigma);
    };
    row(0);
    for (long k = 1; k <= cfg.n_steps; ++k) {
      Vector x(1);
      x[0] = student_t_sample(truth, rng);
      s = online_update(fam, s, fam.statistics(x));
      row(k);
    }
    const StudentTParams fin = student_t_params_from_eta(s.eta, cfg.nu);
    results[i] = Result{std::move(csv), std::abs(fin.mu - truth.mu), std::abs(fin.sigma - truth.sigma), s.skipped,
                        s.reflections};
  });

  RunSummary sum;
  std::vector<double> mu_errs, sigma_errs;
  long skipped = 0, reflections = 0;
  for (std::size_t i = 0; i < n_traj; ++i) {
    out.add(fmt::format("student_t_traj_{:03d}.csv", i), std::move(results[i].csv));
    mu_errs.push_back(results[i].mu_err);
    sigma_errs.push_back(results[i].sigma_err);
    skipped += results[i].skipped;
    reflections += results[i].reflections;
    sum.metrics[fmt::format("final_abs_error_mu.{:03d}", i)] = results[i].mu_err;
    sum.metrics[fmt::format("final_abs_error_sigma.{:03d}", i)] = results[i].sigma_err;
  }
  const double med_mu = median(mu_errs), med_sigma = median(sigma_errs);
  const double max_err = std::max(*std::max_element(mu_errs.begin(), mu_errs.end()),
                                  *std::max_element(sigma_errs.begin(), sigma_errs.end()));
  sum.metrics["median_abs_error_mu"] = med_mu;
  sum.metrics["median_abs_error_sigma"] = med_sigma;
  sum.metrics["max_abs_error"] = max_err;
  sum.metrics["skipped_updates"] = static_cast<double>(skipped);
  sum.metrics["reflections"] = static_cast<double>(reflections);
  sum.metrics["lambda"] = fam.lambda();
  if (cfg.check && cfg.n_steps > 0) {
    sum.check("max final |mu - mu*|, |sigma - sigma*|", max_err < cfg.max_error, max_err,
              fmt::format("< {}", cfg.max_error));
    sum.check("median final |mu - mu*|", med_mu < cfg.median_error, med_mu, fmt::format("< {}", cfg.median_error));
    sum.check("median final |sigma - sigma*|", med_sigma < cfg.median_error, med_sigma,
              fmt::format("< {}", cfg.median_error));
  }
  return sum;
}

}  // namespace xmd
