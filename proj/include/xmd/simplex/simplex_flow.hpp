// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/simplex/portfolio.hpp"

namespace xmd {

/// d/dt log q_i = -(p_i / pi_i) [D_i f - q_i sum_j (p_j / p_i)^2 D_j f], pi = pi_phi(inverse(p)),
/// with D the directional derivatives of f at p and q = T_phi(p).
Vector simplex_flow_rhs(const PortfolioGenerator& gen, const Vector& dir_grads, const SimplexPoint& p,
                        const SimplexPoint& q);

/// p_i <- p_i exp(-delta p_i D_i f), renormalised.
SimplexPoint step_multiplicative(const SimplexPoint& p, const Vector& dir_grads, double delta);

/// p_i <- p_i exp(-delta grad_i f), renormalised.
SimplexPoint step_entropic(const SimplexPoint& p, const Vector& euclidean_grads, double delta);

struct TransportStep {
  SimplexPoint p;
  SimplexPoint q;
};

/// Forward Euler in log q followed by the inverse transport map.
TransportStep step_transport_flow(const PortfolioGenerator& gen, const SimplexPoint& p, const SimplexPoint& q,
                                  const Vector& dir_grads, double delta);

}  // namespace xmd
