// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/core/types.hpp"
#include "xmd/random/rng.hpp"

namespace xmd {

double standard_normal(CounterRng& rng);

/// Gamma(shape, 1) by Marsaglia-Tsang squeeze acceptance.
double gamma_sample(double shape, CounterRng& rng);

/// log of a Gamma(shape, 1) draw; stays finite for very small shapes.
double log_gamma_sample(double shape, CounterRng& rng);

double chi_square_sample(double dof, CounterRng& rng);
double standard_t_sample(double dof, CounterRng& rng);

/// Dirichlet(alpha) draw normalised in log space, floored at 1e-300.
Vector dirichlet_sample(const Vector& alpha, CounterRng& rng);
Vector symmetric_dirichlet_sample(Index n, double concentration, CounterRng& rng);

}  // namespace xmd
