// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xmd/core/types.hpp"

namespace xmd {

/// Open set given by box bounds and scalar constraints g(x) > 0.
class Domain {
 public:
  struct Constraint {
    std::string name;
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    /// Optional custom reflection; receives the point and the floor.
    std::function<Vector(const Vector&, double)> reflect;
  };

  static Domain whole(Index dim);
  static Domain box(Vector lower, Vector upper);
  static Domain positive_orthant(Index dim);
  static Domain negative_orthant(Index dim);

  Domain with_constraint(Constraint c) const;

  Index dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  bool contains(const Vector& x) const;

  /// Smallest slack over all faces and constraints; positive iff inside.
  /// Constraint slacks are normalised by the gradient norm.
  double boundary_margin(const Vector& x) const;

  /// Mirror violated coordinates / constraint values back inside, plus floor.
  Vector reflect(const Vector& x, double floor = 1e-12) const;

 private:
  Domain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {}

  Vector lower_;
  Vector upper_;
  std::vector<Constraint> constraints_;
};

}  // namespace xmd
