// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "xmd/expfam/family.hpp"

namespace xmd {

using DeltaSchedule = std::function<double(long k)>;

/// delta_k = scale / k^power.
DeltaSchedule power_schedule(double scale = 1.0, double power = 1.0);
DeltaSchedule harmonic_schedule();
DeltaSchedule constant_schedule(double delta);
/// Parses "1/k", "c/k", "c/sqrt(k)", "c/k^a" or "const:c".
DeltaSchedule parse_schedule(const std::string& spec);

struct OnlineState {
  Vector eta;
  Vector theta;
  long k = 1;  ///< index of the next observation
  DeltaSchedule delta_schedule = harmonic_schedule();
  long skipped = 0;
  long reflections = 0;
  long halvings = 0;
};

OnlineState make_online_state(const LambdaExpFamily& model, const Vector& theta0,
                              DeltaSchedule schedule = harmonic_schedule());

/// (1 + lambda <theta, eta>) / (1 + lambda <theta, y>), the step factor in the online update.
double online_step_factor(const LambdaExpFamily& model, const Vector& theta, const Vector& eta, const Vector& y);

/// eta + delta * factor * (y - eta) without projection; overflow-safe for large |y|.
Vector online_raw_step(const LambdaExpFamily& model, const Vector& theta, const Vector& eta, const Vector& y,
                       double delta);

/// One online natural-gradient step with delta given explicitly. Leaving H triggers a reflection;
/// if the reflected point still cannot be mapped back, the step is halved (at most 20 times) and
/// finally skipped. Advances k either way.
OnlineState online_update(const LambdaExpFamily& model, const OnlineState& state, const Vector& y, double delta);
/// Same, with delta from the state's schedule.
OnlineState online_update(const LambdaExpFamily& model, const OnlineState& state, const Vector& y);

/// |log eta - log eta'| for positive dual coordinates.
double dual_log_distance(const Vector& eta, const Vector& eta_p);

}  // namespace xmd
