// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/expfam/family.hpp"
#include "xmd/random/rng.hpp"

namespace xmd {

/// Location-scale Student-t with known degrees of freedom.
struct StudentTParams {
  double mu = 0.0;
  double sigma = 1.0;
  double nu = 3.0;

  /// -2 / (nu + 1).
  double lambda() const { return -2.0 / (nu + 1.0); }
  void validate() const;
};

double student_t_lambda(double nu);

/// Normalising constant C = log Gamma(nu/2) + log sqrt(nu pi) - log Gamma((nu+1)/2).
double student_t_constant(double nu);

Vector student_t_coords(const StudentTParams& params);
StudentTParams student_t_params(const Vector& theta, double nu);

Vector student_t_mirror(const Vector& theta, double lambda);
Vector student_t_inverse_mirror(const Vector& eta, double lambda);
/// eta = (mu, mu^2 + sigma^2).
Vector student_t_eta(const StudentTParams& params);
StudentTParams student_t_params_from_eta(const Vector& eta, double nu);

/// Theta = {theta2 < 0, lambda theta1^2 - 4 theta2 > 0}.
Domain student_t_domain(double lambda);
/// H = {eta2 - eta1^2 > 0}; reflection pushes eta2 back above eta1^2.
Domain student_t_dual_domain();

/// phi with analytic gradient, Hessian, conformal Hessian and closed-form mirror maps.
Generator student_t_generator(double nu);
/// Observations are scalars (1-vectors); F(x) = (x, x^2).
LambdaExpFamily student_t_family(double nu);

double student_t_sample(const StudentTParams& params, CounterRng& rng);
/// Log of the classical density with the Gamma-function constant.
double student_t_log_density(const StudentTParams& params, double x);

}  // namespace xmd
