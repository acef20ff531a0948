// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "xmd/flow/flow.hpp"

namespace xmd {

using Series = std::vector<std::pair<double, double>>;

struct ConvergenceReport {
  Series lyapunov_series;  ///< (t or k, E)
  Series bound_series;     ///< (t or k, energy bound)
  Series gap_series;       ///< (t or k, f(theta_hat) - f(theta*))
  std::optional<double> smoothness_L;
  int lyapunov_violations = 0;
  double max_lyapunov_increase = 0.0;
  int bound_violations = 0;
  double max_bound_excess = 0.0;  ///< max of gap - bound
  int halvings = 0;
};

/// E_t = L[theta* : theta_t] and the averaged-gap bound along an integrated trajectory.
ConvergenceReport lyapunov_continuous(const Generator& gen, const Objective& obj_star,
                                      const std::vector<FlowState>& trajectory, double tol = 1e-9);

/// Adaptive mirror iterations with the discrete potential and the weighted-average bound.
ConvergenceReport discrete_lyapunov_run(const Generator& gen, const Objective& obj_star, const Vector& theta0,
                                        double delta, long k_max, double tol = 1e-9);

struct SmoothnessEstimate {
  double L = 0.0;
  double identity_residual = 0.0;  ///< max error of the equivalent right-hand form
  int pairs_used = 0;
  int flagged = 0;  ///< denominators below the guard
};

/// Smallest L with B_f[x:y] <= L exp(-lambda phi(y)) B_Phi[x:y] over the pairs.
SmoothnessEstimate conformal_smoothness_estimate(const Generator& gen, const Objective& obj,
                                                 const std::vector<std::pair<Vector, Vector>>& grid_pairs,
                                                 double guard = 1e-14);

struct GeodesicReport {
  double dual_collinearity = 0.0;      ///< max distance of eta_t to [eta0, eta*]
  double dual_coefficient_error = 0.0; ///< max |field - (-(Pi / (1 + lambda<theta, eta*>))(eta - eta*))|
  double dual_fd_error = 0.0;          ///< differenced path against the same formula
  double primal_collinearity = 0.0;    ///< max distance of theta_t to [theta0, theta*]
  std::size_t dual_samples = 0;
  std::size_t primal_samples = 0;
  bool completed = true;
  std::string failure;
  bool passed(double tol = 1e-6) const {
    return completed && dual_collinearity < tol && dual_coefficient_error < tol && primal_collinearity < tol;
  }
};

/// Dual flow of L[. : theta*] and primal flow of L[theta* : .] from theta0.
/// A replacement dual field can be injected to exercise the check.
GeodesicReport geodesic_flow_check(const Generator& gen, const Vector& theta_star, const Vector& theta0,
                                   double t_end, double dt, const DualField& dual_field = {});

struct TimeChangeReport {
  double max_deviation = 0.0;
  double s_end = 0.0;
  std::size_t samples = 0;
};

/// Conformal flow against the time-changed Hessian flow of Phi_lambda.
TimeChangeReport time_change_check(const Generator& gen, const Objective& obj, const Vector& theta0, double t_end,
                                   double dt);

/// max |d zeta/dt + exp(lambda phi) grad f| by central differences along a uniform trajectory.
double zeta_form_residual(const Generator& gen, const Objective& obj, const std::vector<FlowState>& trajectory);

/// Distance from x to the segment [a, b].
double segment_distance(const Vector& x, const Vector& a, const Vector& b);

}  // namespace xmd
