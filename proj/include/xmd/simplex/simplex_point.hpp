// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xmd/core/types.hpp"

namespace xmd {

inline constexpr double kWeightFloor = 1e-300;

/// Strictly positive probability vector.
class SimplexPoint {
 public:
  /// Requires positive finite weights summing to one within 1e-8; renormalises.
  explicit SimplexPoint(const Vector& weights);

  /// Any positive vector, scaled to sum to one; entries floored at kWeightFloor.
  static SimplexPoint normalize(const Vector& positive);
  /// Softmax of log weights with max subtraction, floored at kWeightFloor.
  static SimplexPoint from_log(const Vector& log_weights);
  static SimplexPoint barycenter(Index n);

  const Vector& weights() const { return w_; }
  Vector log_weights() const { return w_.array().log().matrix(); }
  Index size() const { return w_.size(); }
  double operator[](Index i) const { return w_[i]; }
  double min_weight() const { return w_.minCoeff(); }

 private:
  struct Trusted {};
  SimplexPoint(Vector w, Trusted) : w_(std::move(w)) {}
  Vector w_;
};

SimplexPoint perturb(const SimplexPoint& p, const SimplexPoint& q);
SimplexPoint power(double alpha, const SimplexPoint& p);
/// The Aitchison inverse, (-1) (x) p.
SimplexPoint inverse(const SimplexPoint& p);

/// log(mean(q/p)) - mean(log(q/p)), evaluated in log space.
double dirichlet_cost(const SimplexPoint& p, const SimplexPoint& q);
/// Ambient gradient of p -> c(p, target).
Vector dirichlet_cost_gradient(const SimplexPoint& p, const SimplexPoint& target);

}  // namespace xmd
