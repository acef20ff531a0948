// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "xmd/core/generator.hpp"
#include "xmd/random/rng.hpp"

namespace xmd {

/// Densities (1 + lambda <theta, F(x)>)_+^(1/lambda) exp(-phi(theta)).
/// The potential carries lambda, Theta and, when known, the closed-form mirror maps
/// and the dual domain H.
struct LambdaExpFamily {
  std::string name;
  Generator potential;
  /// Observation x -> F(x).
  std::function<Vector(const Vector&)> statistics;
  /// Draw an observation x from p_theta.
  std::function<Vector(const Vector& theta, CounterRng&)> sampler;

  double lambda() const { return potential.lambda(); }
  Index dim() const { return potential.dim(); }
  /// Closed form when registered, otherwise the generic lambda-mirror map.
  Vector mirror(const Vector& theta) const;
  Vector inverse_mirror(const Vector& eta, const std::optional<Vector>& guess = std::nullopt) const;
  /// H; the whole space when none is registered.
  Domain dual_domain() const;
};

/// log p_theta at a statistic value y = F(x). Throws DomainError outside the support.
double log_density_stat(const LambdaExpFamily& model, const Vector& theta, const Vector& y);

struct LogLoss {
  double value = 0.0;
  Vector gradient;
};

/// f(theta) = phi(theta) - (1/lambda) log(1 + lambda <theta, y>) and its gradient
/// eta / (1 + lambda <theta, eta>) - y / (1 + lambda <theta, y>).
LogLoss log_loss(const LambdaExpFamily& model, const Vector& theta, const Vector& y);

/// eta - delta Pi (I + lambda eta theta^T) grad f for an arbitrary gradient.
Vector natural_gradient_step(const LambdaExpFamily& model, const Vector& theta, const Vector& eta,
                             const Vector& grad, double delta);

}  // namespace xmd
