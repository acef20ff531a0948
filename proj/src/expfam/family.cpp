// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/family.hpp"

#include <cmath>

#include "xmd/core/duality.hpp"

namespace xmd {

Vector LambdaExpFamily::mirror(const Vector& theta) const {
  if (potential.mirror_closed()) return (*potential.mirror_closed())(theta);
  return lambda_mirror(potential, theta).eta;
}

Vector LambdaExpFamily::inverse_mirror(const Vector& eta, const std::optional<Vector>& guess) const {
  return xmd::inverse_mirror(potential, eta, guess);
}

Domain LambdaExpFamily::dual_domain() const {
  return potential.dual_domain() ? *potential.dual_domain() : Domain::whole(dim());
}

namespace {

double support_arg(const LambdaExpFamily& model, const Vector& theta, const Vector& y) {
  const double arg = 1.0 + model.lambda() * theta.dot(y);
  if (!(arg > 0.0) || !std::isfinite(arg))
    throw DomainError("observation outside the support: 1 + lambda <theta, y> = " + std::to_string(arg));
  return arg;
}

}  // namespace

double log_density_stat(const LambdaExpFamily& model, const Vector& theta, const Vector& y) {
  const double arg = support_arg(model, theta, y);
  return std::log(arg) / model.lambda() - model.potential.value(theta);
}

LogLoss log_loss(const LambdaExpFamily& model, const Vector& theta, const Vector& y) {
  const double lam = model.lambda();
  const double arg = support_arg(model, theta, y);
  const Vector eta = model.mirror(theta);
  LogLoss out;
  out.value = model.potential.value(theta) - std::log(arg) / lam;
  out.gradient = eta / (1.0 + lam * theta.dot(eta)) - y / arg;
  return out;
}

Vector natural_gradient_step(const LambdaExpFamily& model, const Vector& theta, const Vector& eta,
                             const Vector& grad, double delta) {
  const double lam = model.lambda();
  const double pi = 1.0 + lam * theta.dot(eta);
  return eta - delta * pi * (grad + lam * eta * theta.dot(grad));
}

}  // namespace xmd
