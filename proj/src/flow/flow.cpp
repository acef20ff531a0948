// SPDX-License-Identifier: Apache-2.0
#include "xmd/flow/flow.hpp"

#include <cmath>

#include "xmd/core/duality.hpp"

namespace xmd {

namespace {

double tau_weight(const Generator& gen, const Vector& theta) {
  return is_bregman(gen.lambda()) ? 1.0 : std::exp(gen.lambda() * gen.value(theta));
}

/// One classical RK4 step; false if any stage is infeasible.
template <class Eval>
bool rk4(Eval&& eval, const Vector& y, double h, Vector& out) {
  Vector k1, k2, k3, k4;
  if (!eval(y, k1)) return false;
  if (!eval(Vector(y + 0.5 * h * k1), k2)) return false;
  if (!eval(Vector(y + 0.5 * h * k2), k3)) return false;
  if (!eval(Vector(y + h * k3), k4)) return false;
  out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return out.allFinite();
}

/// Accumulates tau and theta_hat by the trapezoid rule between consecutive states.
void accumulate(const Generator& gen, const FlowState& prev, FlowState& next, Vector& weighted_sum) {
  const double h = next.t - prev.t;
  const double w0 = tau_weight(gen, prev.theta), w1 = tau_weight(gen, next.theta);
  next.tau = prev.tau + 0.5 * h * (w0 + w1);
  weighted_sum += 0.5 * h * (w0 * prev.theta + w1 * next.theta);
  next.theta_hat = weighted_sum / next.tau;
}

bool try_state(const Generator& gen, const Vector& theta, double t, FlowState& out) {
  if (!gen.domain().contains(theta)) return false;
  try {
    out = make_state(gen, theta, t);
  } catch (const Error&) {
    return false;
  }
  return true;
}

template <class Advance>
std::vector<FlowState> march(const Generator& gen, const Vector& theta0, double t_end, double dt, int max_halvings,
                             Advance&& advance) {
  if (!(dt > 0.0)) throw InvalidArgument("integrate: dt must be positive");
  if (!(t_end >= 0.0)) throw InvalidArgument("integrate: t_end must be nonnegative");
  std::vector<FlowState> out;
  out.push_back(make_state(gen, theta0));
  Vector weighted_sum = Vector::Zero(theta0.size());
  const long n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  out.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (long k = 1; k <= n_steps; ++k) {
    const double t_target = k == n_steps ? t_end : k * dt;
    while (out.back().t < t_target) {
      const FlowState& cur = out.back();
      double h = t_target - cur.t;
      FlowState next;
      int halvings = 0;
      while (!advance(cur, h, next)) {
        if (++halvings > max_halvings)
          throw InfeasibleStep("integrate: step left the domain after " + std::to_string(max_halvings) +
                               " halvings at t = " + std::to_string(cur.t));
        h *= 0.5;
      }
      next.t = (h == t_target - cur.t) ? t_target : cur.t + h;
      accumulate(gen, cur, next, weighted_sum);
      out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace

FlowState make_state(const Generator& gen, const Vector& theta, double t, double tau) {
  FlowState s;
  DualPair p = lambda_mirror(gen, theta);
  s.theta = theta;
  s.eta = std::move(p.eta);
  s.zeta = phi_lambda_gradient(gen, theta);
  s.t = t;
  s.tau = tau;
  s.theta_hat = theta;
  return s;
}

Vector rhs_primal(const Generator& gen, const Objective& obj, const Vector& theta) {
  if (!gen.has_hessian()) throw InvalidArgument("rhs_primal: generator " + gen.name() + " has no Hessian");
  MetricAtPoint m = metric(gen, theta);
  return -(m.g_inv * obj.gradient(theta));
}

Vector rhs_dual(const Generator& gen, const Objective& obj, const Vector& theta, const Vector& eta) {
  Vector grad = obj.gradient(theta);
  const double lam = gen.lambda();
  if (is_bregman(lam)) return -grad;
  const double pi = 1.0 + lam * theta.dot(eta);
  return -pi * (grad + lam * eta * theta.dot(grad));
}

Vector rhs_dual(const Generator& gen, const Objective& obj, const FlowState& state) {
  return rhs_dual(gen, obj, state.theta, state.eta);
}

std::vector<FlowState> integrate(const Generator& gen, const Objective& obj, const Vector& theta0, double t_end,
                                 double dt, const IntegrateOptions& opts) {
  auto field = opts.field ? opts.field : PrimalField([&](const Vector& th) { return rhs_primal(gen, obj, th); });
  auto eval = [&](const Vector& th, Vector& out) {
    if (!gen.domain().contains(th)) return false;
    try {
      out = field(th);
    } catch (const Error&) {
      return false;
    }
    return out.allFinite();
  };
  auto advance = [&](const FlowState& cur, double h, FlowState& next) {
    Vector th;
    if (!rk4(eval, cur.theta, h, th)) return false;
    return try_state(gen, th, cur.t + h, next);
  };
  return march(gen, theta0, t_end, dt, opts.max_halvings, advance);
}

std::vector<FlowState> integrate_dual(const Generator& gen, const Objective& obj, const Vector& theta0,
                                      double t_end, double dt, const DualField& field, int max_halvings) {
  auto f = field ? field : DualField([&](const Vector& th, const Vector& e) { return rhs_dual(gen, obj, th, e); });
  Vector guess = theta0;
  auto theta_of = [&](const Vector& eta, Vector& th) {
    try {
      th = inverse_mirror(gen, eta, guess);
    } catch (const Error&) {
      return false;
    }
    return gen.domain().contains(th);
  };
  auto eval = [&](const Vector& eta, Vector& out) {
    Vector th;
    if (!theta_of(eta, th)) return false;
    try {
      out = f(th, eta);
    } catch (const Error&) {
      return false;
    }
    return out.allFinite();
  };
  auto advance = [&](const FlowState& cur, double h, FlowState& next) {
    guess = cur.theta;
    Vector eta;
    if (!rk4(eval, cur.eta, h, eta)) return false;
    Vector th;
    if (!theta_of(eta, th)) return false;
    if (!try_state(gen, th, cur.t + h, next)) return false;
    next.eta = eta;
    return true;
  };
  return march(gen, theta0, t_end, dt, max_halvings, advance);
}

Vector step_primal_euler(const Generator& gen, const Objective& obj, const Vector& theta_k, double delta,
                         StepInfo* info) {
  const Domain& dom = gen.domain();
  const Vector v = rhs_primal(gen, obj, theta_k);
  double d = delta;
  for (int h = 0; h <= 20; ++h, d *= 0.5) {
    Vector cand = theta_k + d * v;
    bool reflected = false;
    if (!dom.contains(cand)) {
      cand = dom.reflect(cand);
      reflected = true;
    }
    if (dom.contains(cand) && check_regularity(gen, cand).denominator > 0.0) {
      if (info) *info = {d, h, reflected};
      return cand;
    }
  }
  throw InfeasibleStep("step_primal_euler: no feasible step after reflection and 20 halvings");
}

FlowState step_dual_euler(const Generator& gen, const Objective& obj, const FlowState& state, double delta,
                          StepInfo* info) {
  const Vector v = rhs_dual(gen, obj, state);
  const double w0 = tau_weight(gen, state.theta);
  double d = delta;
  for (int h = 0; h <= 20; ++h, d *= 0.5) {
    Vector eta = state.eta + d * v;
    bool reflected = false;
    if (gen.dual_domain() && !gen.dual_domain()->contains(eta)) {
      eta = gen.dual_domain()->reflect(eta);
      reflected = true;
      if (!gen.dual_domain()->contains(eta)) continue;
    }
    Vector th;
    try {
      th = inverse_mirror(gen, eta, state.theta);
    } catch (const Error&) {
      continue;
    }
    FlowState next;
    if (!try_state(gen, th, state.t + d, next)) continue;
    next.eta = eta;
    next.tau = state.tau + d * w0;
    next.theta_hat = state.tau > 0.0 ? Vector((state.tau * state.theta_hat + d * w0 * th) / next.tau) : th;
    if (info) *info = {d, h, reflected};
    return next;
  }
  throw InfeasibleStep("step_dual_euler: no feasible step after reflection and 20 halvings");
}

Vector step_adaptive_mirror(const Generator& gen, const Objective& obj, const Vector& theta_k, double delta,
                            StepInfo* info) {
  const Vector zeta = phi_lambda_gradient(gen, theta_k);
  const Vector v = tau_weight(gen, theta_k) * obj.gradient(theta_k);
  double d = delta;
  for (int h = 0; h <= 20; ++h, d *= 0.5) {
    if (d == 0.0) {
      if (info) *info = {0.0, h, false};
      return theta_k;
    }
    try {
      Vector th = inverse_conformal_gradient(gen, zeta - d * v, theta_k);
      if (info) *info = {d, h, false};
      return th;
    } catch (const Error&) {
    }
  }
  throw InfeasibleStep("step_adaptive_mirror: zeta left the range of grad Phi_lambda after 20 halvings");
}

}  // namespace xmd
