// SPDX-License-Identifier: Apache-2.0
#include "xmd/flow/objective.hpp"

#include "xmd/core/duality.hpp"

namespace xmd {

Objective log_div_to_target(const Generator& gen, const Vector& theta_star) {
  if (!gen.domain().contains(theta_star)) throw DomainError("log_div_to_target: target outside the domain");
  Objective obj;
  obj.name = "log_div_to_target";
  obj.minimizer = theta_star;
  obj.value = [gen, theta_star](const Vector& th) { return log_div(gen, theta_star, th); };
  obj.gradient = [gen, theta_star](const Vector& th) {
    const Vector a = gen.gradient(th);
    const Vector diff = theta_star - th;
    const Vector hd = gen.hessian(th) * diff;
    if (is_bregman(gen.lambda())) return Vector(-hd);
    const double arg = 1.0 + gen.lambda() * a.dot(diff);
    if (!(arg > kLogFloor)) throw DomainError("log_div_to_target: log argument is not positive");
    return Vector(-a - (hd - a) / arg);
  };
  return obj;
}

Objective log_div_from_target(const Generator& gen, const Vector& theta_star) {
  if (!gen.domain().contains(theta_star)) throw DomainError("log_div_from_target: target outside the domain");
  Objective obj;
  obj.name = "log_div_from_target";
  obj.minimizer = theta_star;
  const Vector a_star = gen.gradient(theta_star);
  obj.value = [gen, theta_star](const Vector& th) { return log_div(gen, th, theta_star); };
  obj.gradient = [gen, theta_star, a_star](const Vector& th) {
    const double arg = is_bregman(gen.lambda()) ? 1.0 : 1.0 + gen.lambda() * a_star.dot(th - theta_star);
    if (!(arg > kLogFloor)) throw DomainError("log_div_from_target: log argument is not positive");
    return Vector(gen.gradient(th) - a_star / arg);
  };
  return obj;
}

Objective quadratic_objective(const Matrix& a, const Vector& center) {
  Objective obj;
  obj.name = "quadratic";
  obj.minimizer = center;
  obj.value = [a, center](const Vector& th) {
    Vector d = th - center;
    return 0.5 * d.dot(a * d);
  };
  obj.gradient = [a, center](const Vector& th) { return Vector(a * (th - center)); };
  return obj;
}

}  // namespace xmd
