// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "xmd/core/duality.hpp"
#include "xmd/core/generators.hpp"
#include "xmd/experiments/experiments.hpp"
#include "xmd/flow/diagnostics.hpp"
#include "xmd/flow/trajectory_io.hpp"

namespace xmd {

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix mat2(double a, double b, double c) {
  Matrix m(2, 2);
  m << a, b, b, c;
  return m;
}

std::string series_csv(const char* index, const ConvergenceReport& r) {
  std::string csv = fmt::format("{},E,bound,gap\n", index);
  std::size_t j = 0;
  for (const auto& [t, e] : r.lyapunov_series) {
    // The bound starts once the time weight is positive; earlier rows leave it empty.
    if (j < r.bound_series.size() && r.bound_series[j].first == t) {
      csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", t, e, r.bound_series[j].second, r.gap_series[j].second);
      ++j;
    } else {
      csv += fmt::format("{:.17g},{:.17g},,\n", t, e);
    }
  }
  return csv;
}

DualField faulty_dual(const ExperimentConfig& cfg, const Generator& gen, const Objective& obj) {
  if (cfg.inject_fault != "dual_sign") return {};
  return [gen, obj](const Vector& th, const Vector& eta) { return Vector(-rhs_dual(gen, obj, th, eta)); };
}

RunSummary flow_equivalence(const ExperimentConfig& cfg, OutputSet& out) {
  RunSummary sum;
  const Generator gen = neg_half_log_generator(cfg.lambda);
  const Objective f = quadratic_objective(Matrix::Identity(1, 1), Vector::Constant(1, 2.0));
  const Vector theta0 = Vector::Constant(1, 0.5);

  const TimeChangeReport tc = time_change_check(gen, f, theta0, cfg.t_end, cfg.dt);
  sum.metrics["time_change_max_deviation"] = tc.max_deviation;
  sum.metrics["time_change_s_end"] = tc.s_end;

  // Order of accuracy: the sup deviation oscillates with grid alignment, so the growth factor per
  // doubling of dt is fitted over five halvings rather than read off a single pair.
  std::string order_csv = "dt,max_deviation\n";
  std::vector<double> log_dt, log_dev;
  for (int j = 0; j < 5; ++j) {
    const double h = 0.1 / std::pow(2.0, j);
    const double dev = time_change_check(gen, f, theta0, cfg.t_end, h).max_deviation;
    order_csv += fmt::format("{:.17g},{:.17g}\n", h, dev);
    log_dt.push_back(std::log2(h));
    log_dev.push_back(std::log2(dev));
  }
  const double ratio = std::pow(2.0, least_squares_fit(log_dt, log_dev).first);
  sum.metrics["time_change_doubling_ratio"] = ratio;

  const auto traj = integrate(gen, f, theta0, cfg.t_end, std::max(cfg.dt, 1e-3));
  const double zeta_res = zeta_form_residual(gen, f, traj);
  sum.metrics["zeta_form_residual"] = zeta_res;
  std::ostringstream tr;
  write_trajectory_csv(tr, gen, f, traj, f.minimizer);

  // Dual field against the pushforward of the primal field on a two-dimensional instance.
  const Generator g2 = quadratic_generator(mat2(1.5, 0.3, 0.8), -0.6);
  const Objective f2 = quadratic_objective(mat2(2.0, -0.4, 1.0), vec2(0.2, -0.3));
  const DualField fault = faulty_dual(cfg, g2, f2);
  double push_err = 0.0;
  for (double a : {-0.3, 0.0, 0.25})
    for (double b : {-0.2, 0.1, 0.3}) {
      const Vector th = vec2(a, b);
      const Vector eta = lambda_mirror(g2, th).eta;
      const Vector pushed = mirror_jacobian(g2, th) * rhs_primal(g2, f2, th);
      const Vector dual = fault ? fault(th, eta) : rhs_dual(g2, f2, th, eta);
      push_err = std::max(push_err, (pushed - dual).norm() / (1.0 + pushed.norm()));
    }
  sum.metrics["dual_pushforward_error"] = push_err;

  out.add("flow_equivalence_trajectory.csv", tr.str());
  out.add("flow_equivalence_order.csv", std::move(order_csv));
  if (cfg.check) {
    sum.check("time-change sup deviation", tc.max_deviation < cfg.tol, tc.max_deviation, fmt::format("< {}", cfg.tol));
    sum.check("deviation ratio when dt doubles", ratio > 12.0 && ratio < 20.0, ratio, "in [12, 20]");
    sum.check("zeta-form residual", zeta_res < 1e-5, zeta_res, "< 1e-05");
    sum.check("dual field equals pushed-forward primal field", push_err < 1e-7, push_err, "< 1e-07");
  }
  return sum;
}

RunSummary geodesic_check(const ExperimentConfig& cfg, OutputSet& out) {
  RunSummary sum;
  const Vector ts = vec2(0.3, -0.2), t0 = vec2(-0.4, 0.5);
  struct Instance {
    const char* name;
    Matrix a;
  };
  const Instance instances[] = {{"isotropic", Matrix::Identity(2, 2)}, {"anisotropic", mat2(1.5, 0.3, 0.8)}};
  for (const auto& inst : instances) {
    const Generator gen = quadratic_generator(inst.a, cfg.lambda);
    const Objective dual_obj = log_div_from_target(gen, ts);
    const GeodesicReport r = geodesic_flow_check(gen, ts, t0, cfg.t_end, cfg.dt, faulty_dual(cfg, gen, dual_obj));
    const std::string p = std::string(inst.name) + ".";
    sum.metrics[p + "dual_collinearity"] = r.dual_collinearity;
    sum.metrics[p + "dual_coefficient_error"] = r.dual_coefficient_error;
    sum.metrics[p + "dual_fd_error"] = r.dual_fd_error;
    sum.metrics[p + "primal_collinearity"] = r.primal_collinearity;
    if (!r.completed) sum.notes[p + "failure"] = r.failure;

    if (r.completed) {
      std::ostringstream d, q;
      write_trajectory_csv(d, gen, dual_obj, integrate_dual(gen, dual_obj, t0, cfg.t_end, cfg.dt));
      const Objective primal_obj = log_div_to_target(gen, ts);
      write_trajectory_csv(q, gen, primal_obj, integrate(gen, primal_obj, t0, cfg.t_end, cfg.dt), ts);
      out.add(fmt::format("geodesic_{}_dual.csv", inst.name), d.str());
      out.add(fmt::format("geodesic_{}_primal.csv", inst.name), q.str());
    }
    if (cfg.check) {
      // An incomplete run has no meaningful deviations, so they are reported as NaN and fail.
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const double dc = r.completed ? r.dual_collinearity : nan;
      const double de = r.completed ? r.dual_coefficient_error : nan;
      const double pc = r.completed ? r.primal_collinearity : nan;
      const std::string rel = fmt::format("< {}", cfg.tol);
      sum.check(p + "flows completed", r.completed, r.completed ? 1.0 : 0.0, "== 1");
      sum.check(p + "dual collinearity", dc < cfg.tol, dc, rel);
      sum.check(p + "dual coefficient", de < cfg.tol, de, rel);
      sum.check(p + "primal collinearity", pc < cfg.tol, pc, rel);
    }
  }
  return sum;
}

RunSummary lyapunov_suite(const ExperimentConfig& cfg, OutputSet& out) {
  RunSummary sum;
  auto record = [&](const std::string& name, const ConvergenceReport& r) {
    sum.metrics[name + ".lyapunov_violations"] = r.lyapunov_violations;
    sum.metrics[name + ".max_lyapunov_increase"] = r.max_lyapunov_increase;
    sum.metrics[name + ".bound_violations"] = r.bound_violations;
    sum.metrics[name + ".max_bound_excess"] = r.max_bound_excess;
    if (cfg.check) {
      sum.check(name + ": Lyapunov increases above tolerance", r.lyapunov_violations == 0, r.lyapunov_violations,
                "== 0");
      sum.check(name + ": gap above the bound", r.bound_violations == 0, r.bound_violations, "== 0");
    }
  };
  {
    const Generator gen = neg_half_log_generator(1.0);
    const Objective f = quadratic_objective(Matrix::Identity(1, 1), Vector::Constant(1, 2.0));
    const auto traj = integrate(gen, f, Vector::Constant(1, 0.8), cfg.t_end, cfg.dt);
    const ConvergenceReport r = lyapunov_continuous(gen, f, traj, cfg.tol);
    record("continuous_1d", r);
    out.add("lyapunov_continuous_1d.csv", series_csv("t", r));
  }
  {
    const Generator gen = quadratic_generator(mat2(1.5, 0.3, 0.8), cfg.lambda);
    const Objective f = quadratic_objective(mat2(2.0, -0.4, 1.0), vec2(0.2, -0.3));
    const auto traj = integrate(gen, f, vec2(-0.4, 0.5), cfg.t_end, cfg.dt);
    const ConvergenceReport r = lyapunov_continuous(gen, f, traj, cfg.tol);
    record("continuous_2d", r);
    out.add("lyapunov_continuous_2d.csv", series_csv("t", r));
  }
  {
    const Generator gen = half_square_generator(cfg.lambda);
    const Objective f = quadratic_objective(Matrix::Identity(1, 1), Vector::Constant(1, 0.3));
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int i = 0; i < 61; ++i)
      for (int j = 0; j < 61; ++j)
        if (i != j) pairs.emplace_back(Vector::Constant(1, -0.9 + 1.8 * i / 60.0), Vector::Constant(1, -0.9 + 1.8 * j / 60.0));
    const SmoothnessEstimate s = conformal_smoothness_estimate(gen, f, pairs);
    const double delta = 1.0 / (2.0 * s.L);
    sum.metrics["discrete.smoothness_L"] = s.L;
    sum.metrics["discrete.delta"] = delta;
    const ConvergenceReport r = discrete_lyapunov_run(gen, f, Vector::Constant(1, -0.8), delta, cfg.n_steps, cfg.tol);
    record("discrete", r);
    out.add("lyapunov_discrete.csv", series_csv("k", r));
  }
  return sum;
}

}  // namespace

RunSummary run_diagnostics(const ExperimentConfig& cfg, OutputSet& out) {
  switch (cfg.experiment) {
    case Experiment::FlowEquivalence:
      return flow_equivalence(cfg, out);
    case Experiment::GeodesicCheck:
      return geodesic_check(cfg, out);
    case Experiment::LyapunovSuite:
      return lyapunov_suite(cfg, out);
    default:
      throw InvalidArgument("run_diagnostics: not a diagnostics experiment");
  }
}

}  // namespace xmd
