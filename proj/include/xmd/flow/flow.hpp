// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "xmd/core/generator.hpp"
#include "xmd/flow/objective.hpp"

namespace xmd {

struct FlowState {
  Vector theta;
  Vector eta;
  Vector zeta;  ///< gradient of Phi_lambda
  double t = 0.0;
  double tau = 0.0;  ///< integral of exp(lambda phi) dt
  Vector theta_hat;  ///< tau-weighted average of theta
};

FlowState make_state(const Generator& gen, const Vector& theta, double t = 0.0, double tau = 0.0);

/// -G^{-1} grad f.
Vector rhs_primal(const Generator& gen, const Objective& obj, const Vector& theta);

/// -Pi (I + lambda eta theta^T) grad f: the primal field pushed through the mirror map.
Vector rhs_dual(const Generator& gen, const Objective& obj, const FlowState& state);
Vector rhs_dual(const Generator& gen, const Objective& obj, const Vector& theta, const Vector& eta);

/// Vector field in theta, for integrate().
using PrimalField = std::function<Vector(const Vector& theta)>;
/// Vector field in eta given (theta, eta), for integrate_dual().
using DualField = std::function<Vector(const Vector& theta, const Vector& eta)>;

struct IntegrateOptions {
  int max_halvings = 20;
  /// Replaces rhs_primal when set.
  PrimalField field;
};

/// Classical RK4 in theta with fixed step dt; every accepted (sub)step is returned,
/// starting with the initial state.
std::vector<FlowState> integrate(const Generator& gen, const Objective& obj, const Vector& theta0, double t_end,
                                 double dt, const IntegrateOptions& opts = {});

/// RK4 in eta; theta recovered by the inverse mirror map at every stage.
std::vector<FlowState> integrate_dual(const Generator& gen, const Objective& obj, const Vector& theta0,
                                      double t_end, double dt, const DualField& field = {}, int max_halvings = 20);

struct StepInfo {
  double delta = 0.0;  ///< step length actually used
  int halvings = 0;
  bool reflected = false;
};

Vector step_primal_euler(const Generator& gen, const Objective& obj, const Vector& theta_k, double delta,
                         StepInfo* info = nullptr);
FlowState step_dual_euler(const Generator& gen, const Objective& obj, const FlowState& state, double delta,
                          StepInfo* info = nullptr);
/// zeta <- zeta - delta exp(lambda phi) grad f, then invert grad Phi_lambda.
Vector step_adaptive_mirror(const Generator& gen, const Objective& obj, const Vector& theta_k, double delta,
                            StepInfo* info = nullptr);

}  // namespace xmd
