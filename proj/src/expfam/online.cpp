// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/online.hpp"

#include <cmath>
#include <regex>

namespace xmd {

DeltaSchedule power_schedule(double scale, double power) {
  if (!(scale > 0.0) || !std::isfinite(power)) throw InvalidArgument("power_schedule: need scale > 0");
  return [scale, power](long k) { return scale / std::pow(static_cast<double>(k), power); };
}

DeltaSchedule harmonic_schedule() { return power_schedule(1.0, 1.0); }

DeltaSchedule constant_schedule(double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("constant_schedule: need delta > 0");
  return [delta](long) { return delta; };
}

DeltaSchedule parse_schedule(const std::string& spec) {
  static const std::regex constant(R"(\s*const\s*:\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*)");
  static const std::regex over_k(R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*/\s*k\s*)");
  static const std::regex over_sqrt(R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*/\s*sqrt\(\s*k\s*\)\s*)");
  static const std::regex over_pow(
      R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*/\s*k\s*\^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*)");
  std::smatch m;
  if (std::regex_match(spec, m, constant)) return constant_schedule(std::stod(m[1]));
  if (std::regex_match(spec, m, over_k)) return power_schedule(std::stod(m[1]), 1.0);
  if (std::regex_match(spec, m, over_sqrt)) return power_schedule(std::stod(m[1]), 0.5);
  if (std::regex_match(spec, m, over_pow)) return power_schedule(std::stod(m[1]), std::stod(m[2]));
  throw InvalidArgument("unrecognised delta schedule '" + spec + "'");
}

OnlineState make_online_state(const LambdaExpFamily& model, const Vector& theta0, DeltaSchedule schedule) {
  if (!model.potential.domain().contains(theta0)) throw DomainError("make_online_state: theta0 outside Theta");
  OnlineState s;
  s.theta = theta0;
  s.eta = model.mirror(theta0);
  s.delta_schedule = std::move(schedule);
  return s;
}

double online_step_factor(const LambdaExpFamily& model, const Vector& theta, const Vector& eta, const Vector& y) {
  const double lam = model.lambda();
  const double den = 1.0 + lam * theta.dot(y);
  if (!(den > 0.0)) throw DomainError("online update: observation outside the support");
  return (1.0 + lam * theta.dot(eta)) / den;
}

Vector online_raw_step(const LambdaExpFamily& model, const Vector& theta, const Vector& eta, const Vector& y,
                       double delta) {
  const double lam = model.lambda();
  // Divide numerator and denominator by max(1, |y|) so huge statistics do not overflow.
  const double s = std::max(1.0, y.lpNorm<Eigen::Infinity>());
  if (!std::isfinite(s)) throw DomainError("online update: non-finite observation");
  const Vector ys = y / s;
  const double den = 1.0 / s + lam * theta.dot(ys);
  if (!(den > 0.0)) throw DomainError("online update: observation outside the support");
  const double pi = 1.0 + lam * theta.dot(eta);
  return eta + delta * pi * (ys - eta / s) / den;
}

OnlineState online_update(const LambdaExpFamily& model, const OnlineState& state, const Vector& y, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("online_update: delta must be positive");
  const Vector target = online_raw_step(model, state.theta, state.eta, y, delta);
  const Vector step = target - state.eta;
  const Domain h = model.dual_domain();
  OnlineState next = state;
  next.k = state.k + 1;
  double scale = 1.0;
  for (int halving = 0; halving <= 20; ++halving, scale *= 0.5) {
    Vector eta = halving == 0 ? target : Vector(state.eta + scale * step);
    bool reflected = false;
    if (!h.contains(eta)) {
      eta = h.reflect(eta);
      reflected = true;
      if (!h.contains(eta)) continue;
    }
    try {
      Vector theta = model.inverse_mirror(eta, state.theta);
      if (!model.potential.domain().contains(theta)) continue;
      next.eta = std::move(eta);
      next.theta = std::move(theta);
      next.reflections += reflected ? 1 : 0;
      next.halvings += halving;
      return next;
    } catch (const Error&) {
      continue;
    }
  }
  ++next.skipped;
  return next;
}

OnlineState online_update(const LambdaExpFamily& model, const OnlineState& state, const Vector& y) {
  return online_update(model, state, y, state.delta_schedule(state.k));
}

double dual_log_distance(const Vector& eta, const Vector& eta_p) {
  if ((eta.array() <= 0.0).any() || (eta_p.array() <= 0.0).any())
    throw DomainError("dual_log_distance: coordinates must be positive");
  return (eta.array().log() - eta_p.array().log()).matrix().norm();
}

}  // namespace xmd
