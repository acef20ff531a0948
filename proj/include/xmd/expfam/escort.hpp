// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/expfam/family.hpp"
#include "xmd/expfam/student_t.hpp"
#include "xmd/random/rng.hpp"

namespace xmd {

/// Escort expectation of F(x) = (x, x^2) with q = 1 - lambda by adaptive quadrature on
/// geometrically widened intervals. Throws ConvergenceError if the tails do not settle.
Vector escort_expectation_numeric(const StudentTParams& params, double tol = 1e-12);
/// Same, via the family at theta.
Vector escort_expectation_numeric(const LambdaExpFamily& model_1d, const Vector& theta, double tol = 1e-12);
/// Integral of p_theta over the real line by the same scheme.
double density_integral_numeric(const LambdaExpFamily& model_1d, const Vector& theta, double tol = 1e-12);

/// Monte Carlo escort mean: samples of F reweighted by 1 / (1 + lambda <theta, F>).
Vector escort_expectation_mc(const LambdaExpFamily& model, const Vector& theta, long n_samples, CounterRng& rng);

struct FisherReport {
  Matrix g;              ///< G_lambda(theta)
  Matrix fisher;         ///< Monte Carlo score outer product
  double rel_error = 0;  ///< |G - (1 - lambda) I| / |G| (Frobenius)
  Matrix entry_ratio;    ///< G_ij / I_ij
  long n_samples = 0;
  bool passed(double tol = 0.05) const { return rel_error < tol; }
};

FisherReport fisher_metric_check(const LambdaExpFamily& model, const Vector& theta, long n_samples,
                                 CounterRng& rng);

}  // namespace xmd
