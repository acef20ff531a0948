// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "xmd/core/generator.hpp"

namespace xmd {

struct DualPair {
  Vector theta;
  Vector eta;
  double pi = 1.0;  ///< 1 + lambda <theta, eta>
};

struct MetricAtPoint {
  Matrix g;
  Matrix g_inv;
  double conformal_factor = 1.0;  ///< exp(-lambda phi(theta))
};

struct NewtonOptions {
  int max_iter = 100;
  double tol = 1e-12;
  int max_backtracks = 60;
  double armijo = 1e-4;
};

struct RegularityReport {
  double denominator = 1.0;  ///< 1 - lambda <grad phi, theta>
  double min_eigenvalue = 0.0;  ///< of the Hessian of Phi_lambda
  bool regular = false;
};

/// c(x, y) = -(1/lambda) log(1 + lambda <x, y>); -<x, y> in the Bregman limit.
double log_cost(const Vector& x, const Vector& y, double lambda);

/// (1/lambda) log(1 + lambda s), or s in the Bregman limit. Throws DomainError.
double scaled_log1p(double s, double lambda);

DualPair lambda_mirror(const Generator& gen, const Vector& theta);

/// Closed form when registered, otherwise Newton from the guess (or the anchor).
Vector inverse_mirror(const Generator& gen, const Vector& eta,
                      const std::optional<Vector>& guess = std::nullopt);
Vector inverse_mirror_newton(const Generator& gen, const Vector& eta,
                             const std::optional<Vector>& guess = std::nullopt,
                             const NewtonOptions& opts = {});

/// psi(eta) = -phi(theta) - c(theta, eta).
double conjugate_value(const Generator& gen, const DualPair& pair);

double bregman_div(const Generator& gen_convex, const Vector& theta, const Vector& theta_p);
double log_div(const Generator& gen, const Vector& theta, const Vector& theta_p);
double log_div_self_dual(const Generator& gen, const Vector& theta, const Vector& eta_p,
                         const std::optional<Vector>& theta_p_guess = std::nullopt);

MetricAtPoint metric(const Generator& gen, const Vector& theta);
/// exp(-lambda phi) times the Hessian of Phi_lambda (closed form if registered).
Matrix metric_conformal_form(const Generator& gen, const Vector& theta);
Matrix metric_inverse_sm(const Generator& gen, const DualPair& pair, const Matrix& jac_theta_eta);

/// d eta / d theta = Pi (I + lambda eta theta^T) G.
Matrix mirror_jacobian(const Generator& gen, const Vector& theta);

// Phi_lambda = expm1(lambda phi) / lambda and its derivatives.
double phi_lambda(const Generator& gen, const Vector& theta);
Vector phi_lambda_gradient(const Generator& gen, const Vector& theta);
Matrix phi_lambda_hessian(const Generator& gen, const Vector& theta);
double conformal_bregman_div(const Generator& gen, const Vector& theta, const Vector& theta_p);

/// Solves grad Phi_lambda(theta) = zeta by damped Newton.
Vector inverse_conformal_gradient(const Generator& gen, const Vector& zeta,
                                  const std::optional<Vector>& guess = std::nullopt,
                                  const NewtonOptions& opts = {});

/// Phi_lambda viewed as a Bregman (lambda = 0) generator on the same domain.
Generator conformal_potential(const Generator& gen);

/// psi on the dual domain; its lambda-mirror map is the inverse of gen's.
Generator dual_generator(const Generator& gen);

RegularityReport check_regularity(const Generator& gen, const Vector& theta);

}  // namespace xmd
