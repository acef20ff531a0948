// SPDX-License-Identifier: Apache-2.0
#include "xmd/simplex/simplex_point.hpp"

#include <cmath>

namespace xmd {

namespace {

Vector floored_normalize(Vector w) {
  w /= w.sum();
  bool floored = false;
  for (Index i = 0; i < w.size(); ++i)
    if (!(w[i] >= kWeightFloor)) {
      w[i] = kWeightFloor;
      floored = true;
    }
  if (floored) w /= w.sum();
  return w;
}

double log_mean_exp(const Vector& x) {
  const double m = x.maxCoeff();
  return m + std::log((x.array() - m).exp().mean());
}

}  // namespace

SimplexPoint::SimplexPoint(const Vector& weights) {
  if (weights.size() < 2) throw InvalidArgument("SimplexPoint: need at least two components");
  for (Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw DomainError("SimplexPoint: weights must be strictly positive and finite");
  const double s = weights.sum();
  if (std::abs(s - 1.0) > 1e-8) throw DomainError("SimplexPoint: weights must sum to one");
  w_ = weights / s;
}

SimplexPoint SimplexPoint::normalize(const Vector& positive) {
  if (positive.size() < 2) throw InvalidArgument("SimplexPoint: need at least two components");
  for (Index i = 0; i < positive.size(); ++i)
    if (!(positive[i] >= 0.0) || !std::isfinite(positive[i]))
      throw DomainError("SimplexPoint::normalize: entries must be nonnegative and finite");
  if (!(positive.sum() > 0.0)) throw DomainError("SimplexPoint::normalize: zero vector");
  return SimplexPoint(floored_normalize(positive), Trusted{});
}

SimplexPoint SimplexPoint::from_log(const Vector& log_weights) {
  if (log_weights.size() < 2) throw InvalidArgument("SimplexPoint: need at least two components");
  if (!log_weights.allFinite()) throw DomainError("SimplexPoint::from_log: log weights must be finite");
  const double m = log_weights.maxCoeff();
  return SimplexPoint(floored_normalize((log_weights.array() - m).exp().matrix()), Trusted{});
}

SimplexPoint SimplexPoint::barycenter(Index n) {
  if (n < 2) throw InvalidArgument("SimplexPoint: need at least two components");
  return SimplexPoint(Vector::Constant(n, 1.0 / static_cast<double>(n)), Trusted{});
}

SimplexPoint perturb(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.size() != q.size()) throw InvalidArgument("perturb: dimension mismatch");
  return SimplexPoint::from_log(p.log_weights() + q.log_weights());
}

SimplexPoint power(double alpha, const SimplexPoint& p) {
  if (!std::isfinite(alpha)) throw InvalidArgument("power: alpha must be finite");
  return SimplexPoint::from_log(alpha * p.log_weights());
}

SimplexPoint inverse(const SimplexPoint& p) { return power(-1.0, p); }

double dirichlet_cost(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.size() != q.size()) throw InvalidArgument("dirichlet_cost: dimension mismatch");
  Vector r = q.log_weights() - p.log_weights();
  const double c = log_mean_exp(r) - r.mean();
  return c > 0.0 ? c : 0.0;
}

Vector dirichlet_cost_gradient(const SimplexPoint& p, const SimplexPoint& target) {
  if (p.size() != target.size()) throw InvalidArgument("dirichlet_cost_gradient: dimension mismatch");
  // d/dp_i [log mean(t/p) - mean log(t/p)] = (1/p_i)(1/n - w_i), w = softmax(log t - log p).
  const double n = static_cast<double>(p.size());
  Vector r = target.log_weights() - p.log_weights();
  const double m = r.maxCoeff();
  Vector w = (r.array() - m).exp().matrix();
  w /= w.sum();
  return ((1.0 / n - w.array()) / p.weights().array()).matrix();
}

}  // namespace xmd
