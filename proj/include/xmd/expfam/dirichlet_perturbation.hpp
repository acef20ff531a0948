// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/expfam/family.hpp"
#include "xmd/random/rng.hpp"
#include "xmd/simplex/simplex_point.hpp"

namespace xmd {

/// Q = p (+) D with D ~ Dirichlet(1/(sigma (1+d)), ...), on the simplex with 1+d parts.
struct DirichletPerturbModel {
  SimplexPoint p;
  double sigma_noise = 0.3;

  double lambda() const { return -sigma_noise; }
  Index d() const { return p.size() - 1; }
};

/// theta^i = p^0 / (lambda p^i).
Vector dirichlet_theta(const SimplexPoint& p, double lambda);
/// eta^i = p^i / p^0.
Vector dirichlet_eta(const SimplexPoint& p);
SimplexPoint dirichlet_p_from_eta(const Vector& eta);
/// F(q)^i = q^i / q^0.
Vector dirichlet_statistics(const Vector& q);

/// phi(theta) = (1/(lambda(1+d))) sum log(-theta^i) on the negative orthant.
Generator dirichlet_generator(Index d, double lambda);
/// Observations are simplex weight vectors of length 1+d; sigma = -lambda.
LambdaExpFamily dirichlet_family(Index d, double lambda);

SimplexPoint dirichlet_perturb_sample(const DirichletPerturbModel& model, CounterRng& rng);

}  // namespace xmd
