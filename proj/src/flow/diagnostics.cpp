// SPDX-License-Identifier: Apache-2.0
#include "xmd/flow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "xmd/core/duality.hpp"

namespace xmd {

namespace {

double weight(const Generator& gen, const Vector& th) {
  return is_bregman(gen.lambda()) ? 1.0 : std::exp(gen.lambda() * gen.value(th));
}

}  // namespace

double segment_distance(const Vector& x, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (x - a).norm();
  const double s = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
  return (x - a - s * ab).norm();
}

ConvergenceReport lyapunov_continuous(const Generator& gen, const Objective& obj_star,
                                      const std::vector<FlowState>& trajectory, double tol) {
  if (!obj_star.minimizer) throw InvalidArgument("lyapunov_continuous: objective has no minimizer");
  if (trajectory.empty()) throw InvalidArgument("lyapunov_continuous: empty trajectory");
  const Vector& ts = *obj_star.minimizer;
  const double f_star = obj_star.value(ts);
  const double b0 = conformal_bregman_div(gen, ts, trajectory.front().theta);
  ConvergenceReport rep;
  double prev = 0.0;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const FlowState& s = trajectory[i];
    const double e = log_div(gen, ts, s.theta);
    rep.lyapunov_series.emplace_back(s.t, e);
    if (i > 0 && e - prev > tol) {
      ++rep.lyapunov_violations;
    }
    if (i > 0) rep.max_lyapunov_increase = std::max(rep.max_lyapunov_increase, e - prev);
    prev = e;
    if (s.tau > 0.0) {
      const double bound = b0 / s.tau;
      const double gap = obj_star.value(s.theta_hat) - f_star;
      rep.bound_series.emplace_back(s.t, bound);
      rep.gap_series.emplace_back(s.t, gap);
      if (gap > bound) ++rep.bound_violations;
      rep.max_bound_excess = std::max(rep.max_bound_excess, gap - bound);
    }
  }
  return rep;
}

ConvergenceReport discrete_lyapunov_run(const Generator& gen, const Objective& obj_star, const Vector& theta0,
                                        double delta, long k_max, double tol) {
  if (!obj_star.minimizer) throw InvalidArgument("discrete_lyapunov_run: objective has no minimizer");
  if (!(delta >= 0.0)) throw InvalidArgument("discrete_lyapunov_run: delta must be nonnegative");
  const Vector& ts = *obj_star.minimizer;
  const double f_star = obj_star.value(ts);
  ConvergenceReport rep;
  Vector th = theta0;
  double sum_terms = 0.0;   // sum delta_s w_{s-1} (f(theta_s) - f*)
  double sum_weights = 0.0; // sum delta_s w_{s-1}
  Vector weighted = Vector::Zero(theta0.size());
  double e1 = 0.0, prev = 0.0;
  for (long k = 1; k <= k_max; ++k) {
    const double w_prev = weight(gen, th);
    StepInfo info;
    th = step_adaptive_mirror(gen, obj_star, th, delta, &info);
    rep.halvings += info.halvings;
    const double fk = obj_star.value(th);
    sum_terms += info.delta * w_prev * (fk - f_star);
    sum_weights += info.delta * w_prev;
    weighted += info.delta * w_prev * th;
    const double e = conformal_bregman_div(gen, ts, th) + sum_terms;
    const double kk = static_cast<double>(k);
    rep.lyapunov_series.emplace_back(kk, e);
    if (k == 1) e1 = e;
    if (k > 1) {
      if (e - prev > tol) ++rep.lyapunov_violations;
      rep.max_lyapunov_increase = std::max(rep.max_lyapunov_increase, e - prev);
    }
    prev = e;
    if (sum_weights > 0.0) {
      const double bound = e1 / sum_weights;
      const double gap = obj_star.value(Vector(weighted / sum_weights)) - f_star;
      rep.bound_series.emplace_back(kk, bound);
      rep.gap_series.emplace_back(kk, gap);
      if (gap > bound) ++rep.bound_violations;
      rep.max_bound_excess = std::max(rep.max_bound_excess, gap - bound);
    }
  }
  return rep;
}

SmoothnessEstimate conformal_smoothness_estimate(const Generator& gen, const Objective& obj,
                                                 const std::vector<std::pair<Vector, Vector>>& grid_pairs,
                                                 double guard) {
  SmoothnessEstimate est;
  const double lam = gen.lambda();
  for (const auto& [x, y] : grid_pairs) {
    const double bf = obj.value(x) - obj.value(y) - obj.gradient(y).dot(x - y);
    const double den = weight(gen, y) > 0.0 ? conformal_bregman_div(gen, x, y) / weight(gen, y) : 0.0;
    if (!(den > guard)) {
      ++est.flagged;
      continue;
    }
    ++est.pairs_used;
    est.L = std::max(est.L, bf / den);
    if (!is_bregman(lam)) {
      const double l = log_div(gen, x, y);
      const double right = std::exp(lam * (gen.value(x) - gen.value(y))) * (-std::expm1(-lam * l)) / lam;
      est.identity_residual = std::max(est.identity_residual, std::abs(den - right));
    }
  }
  return est;
}

GeodesicReport geodesic_flow_check(const Generator& gen, const Vector& theta_star, const Vector& theta0,
                                   double t_end, double dt, const DualField& dual_field) {
  GeodesicReport rep;
  const double lam = gen.lambda();
  const Vector eta_star = lambda_mirror(gen, theta_star).eta;
  const Vector eta0 = lambda_mirror(gen, theta0).eta;
  auto formula = [&](const Vector& th, const Vector& eta) {
    const double c = is_bregman(lam) ? 1.0 : (1.0 + lam * th.dot(eta)) / (1.0 + lam * th.dot(eta_star));
    return Vector(-c * (eta - eta_star));
  };
  const Objective dual_obj = log_div_from_target(gen, theta_star);
  auto field = dual_field ? dual_field
                          : DualField([&](const Vector& th, const Vector& e) { return rhs_dual(gen, dual_obj, th, e); });
  try {
    std::vector<FlowState> dual = integrate_dual(gen, dual_obj, theta0, t_end, dt, field);
    rep.dual_samples = dual.size();
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const FlowState& s = dual[i];
      rep.dual_collinearity = std::max(rep.dual_collinearity, segment_distance(s.eta, eta0, eta_star));
      const Vector expect = formula(s.theta, s.eta);
      const double scale = 1.0 + expect.norm();
      rep.dual_coefficient_error = std::max(rep.dual_coefficient_error, (field(s.theta, s.eta) - expect).norm() / scale);
      if (i > 0 && i + 1 < dual.size()) {
        const double h = dual[i + 1].t - dual[i - 1].t;
        const Vector fd = (dual[i + 1].eta - dual[i - 1].eta) / h;
        rep.dual_fd_error = std::max(rep.dual_fd_error, (fd - expect).norm() / scale);
      }
    }
  } catch (const Error& e) {
    rep.completed = false;
    rep.failure = std::string("dual flow: ") + e.what();
  }
  try {
    const Objective primal_obj = log_div_to_target(gen, theta_star);
    std::vector<FlowState> primal = integrate(gen, primal_obj, theta0, t_end, dt);
    rep.primal_samples = primal.size();
    for (const FlowState& s : primal)
      rep.primal_collinearity = std::max(rep.primal_collinearity, segment_distance(s.theta, theta0, theta_star));
  } catch (const Error& e) {
    rep.completed = false;
    rep.failure += std::string(rep.failure.empty() ? "" : "; ") + "primal flow: " + e.what();
  }
  return rep;
}

TimeChangeReport time_change_check(const Generator& gen, const Objective& obj, const Vector& theta0, double t_end,
                                   double dt) {
  TimeChangeReport rep;
  std::vector<FlowState> conformal = integrate(gen, obj, theta0, t_end, dt);
  const Generator hess_gen = conformal_potential(gen);
  auto hess_field = [&](const Vector& th) { return rhs_primal(hess_gen, obj, th); };
  // s runs at rate exp(lambda phi) <= sup over the conformal path, plus a margin.
  double w_max = 0.0;
  for (const FlowState& s : conformal) w_max = std::max(w_max, weight(gen, s.theta));
  const double s_end = 1.05 * w_max * t_end + 4.0 * dt;
  std::vector<FlowState> hess = integrate(hess_gen, obj, theta0, s_end, dt);
  std::vector<Vector> slope;
  slope.reserve(hess.size());
  for (const FlowState& s : hess) slope.push_back(hess_field(s.theta));
  // Cubic Hermite interpolation of the Hessian path in s.
  auto path = [&](double s) {
    auto it = std::upper_bound(hess.begin(), hess.end(), s, [](double v, const FlowState& st) { return v < st.t; });
    std::size_t j = it == hess.begin() ? 0 : static_cast<std::size_t>(it - hess.begin()) - 1;
    j = std::min(j, hess.size() - 2);
    const double s0 = hess[j].t, h = hess[j + 1].t - s0;
    const double u = (s - s0) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return Vector(h00 * hess[j].theta + h10 * h * slope[j] + h01 * hess[j + 1].theta + h11 * h * slope[j + 1]);
  };
  auto rate = [&](double s) { return weight(gen, path(s)); };
  // ds/dt = exp(lambda phi(theta~(s))) with RK4 on the conformal time grid.
  double s = 0.0;
  rep.max_deviation = (path(0.0) - conformal.front().theta).norm();
  for (std::size_t i = 1; i < conformal.size(); ++i) {
    const double h = conformal[i].t - conformal[i - 1].t;
    const double k1 = rate(s), k2 = rate(s + 0.5 * h * k1), k3 = rate(s + 0.5 * h * k2), k4 = rate(s + h * k3);
    s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (s > hess.back().t) throw InvalidArgument("time_change_check: reparameterised time overran the Hessian path");
    rep.max_deviation = std::max(rep.max_deviation, (path(s) - conformal[i].theta).norm());
  }
  rep.s_end = s;
  rep.samples = conformal.size();
  return rep;
}

double zeta_form_residual(const Generator& gen, const Objective& obj, const std::vector<FlowState>& trajectory) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
    const double h = trajectory[i + 1].t - trajectory[i - 1].t;
    const Vector fd = (trajectory[i + 1].zeta - trajectory[i - 1].zeta) / h;
    const Vector expect = -weight(gen, trajectory[i].theta) * obj.gradient(trajectory[i].theta);
    worst = std::max(worst, (fd - expect).norm() / (1.0 + expect.norm()));
  }
  return worst;
}

}  // namespace xmd
