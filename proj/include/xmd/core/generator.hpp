// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "xmd/core/domain.hpp"
#include "xmd/core/types.hpp"

namespace xmd {

/// Convex function phi on an open domain together with the curvature lambda.
/// Immutable; copies share the callables.
class Generator {
 public:
  using ScalarFn = std::function<double(const Vector&)>;
  using VectorFn = std::function<Vector(const Vector&)>;
  using MatrixFn = std::function<Matrix(const Vector&)>;

  Generator(std::string name, double lambda, Domain domain, ScalarFn value, VectorFn gradient,
            Vector anchor);

  Generator with_hessian(MatrixFn hessian) const;
  /// Closed form of the inverse lambda-mirror map eta -> theta.
  Generator with_inverse_mirror(VectorFn inverse) const;
  /// Closed form of the lambda-mirror map theta -> eta.
  Generator with_mirror(VectorFn mirror) const;
  /// Region of admissible dual coordinates.
  Generator with_dual_domain(Domain dual) const;
  /// Closed form Hessian of Phi_lambda = (exp(lambda phi) - 1) / lambda.
  Generator with_conformal_hessian(MatrixFn hessian) const;

  const std::string& name() const { return impl_->name; }
  double lambda() const { return impl_->lambda; }
  Index dim() const { return impl_->domain.dim(); }
  const Domain& domain() const { return impl_->domain; }
  const Vector& anchor() const { return impl_->anchor; }

  double value(const Vector& theta) const { return impl_->value(theta); }
  Vector gradient(const Vector& theta) const { return impl_->gradient(theta); }

  bool has_hessian() const { return static_cast<bool>(impl_->hessian); }
  /// Analytic Hessian if supplied, otherwise central differences of the gradient.
  Matrix hessian(const Vector& theta) const;
  Matrix hessian_fd(const Vector& theta) const;

  const std::optional<VectorFn>& mirror_closed() const { return impl_->mirror; }
  const std::optional<VectorFn>& inverse_mirror_closed() const { return impl_->inverse_mirror; }
  const std::optional<Domain>& dual_domain() const { return impl_->dual_domain; }
  const std::optional<MatrixFn>& conformal_hessian_closed() const { return impl_->conformal_hessian; }

 private:
  struct Impl {
    std::string name;
    double lambda;
    Domain domain;
    ScalarFn value;
    VectorFn gradient;
    Vector anchor;
    MatrixFn hessian;
    std::optional<VectorFn> mirror;
    std::optional<VectorFn> inverse_mirror;
    std::optional<Domain> dual_domain;
    std::optional<MatrixFn> conformal_hessian;
  };

  explicit Generator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Generator modified(const std::function<void(Impl&)>& edit) const;

  std::shared_ptr<const Impl> impl_;
};

/// Central-difference Jacobian of a vector field with step eps^(1/3)(1+|x_i|).
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x);

}  // namespace xmd
