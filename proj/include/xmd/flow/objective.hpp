// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "xmd/core/generator.hpp"

namespace xmd {

struct Objective {
  std::string name;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::optional<Vector> minimizer;
};

/// f(theta) = L[theta* : theta]; needs the generator Hessian.
Objective log_div_to_target(const Generator& gen, const Vector& theta_star);

/// f(theta) = L[theta : theta*].
Objective log_div_from_target(const Generator& gen, const Vector& theta_star);

/// f(theta) = 0.5 (theta - c)^T A (theta - c).
Objective quadratic_objective(const Matrix& a, const Vector& center);

}  // namespace xmd
