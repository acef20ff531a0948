// SPDX-License-Identifier: Apache-2.0
#include "xmd/core/generator.hpp"

#include <cmath>
#include <limits>

namespace xmd {

Generator::Generator(std::string name, double lambda, Domain domain, ScalarFn value,
                     VectorFn gradient, Vector anchor) {
  if (!value || !gradient) throw InvalidArgument("Generator: value and gradient are required");
  if (!std::isfinite(lambda)) throw InvalidArgument("Generator: lambda must be finite");
  if (anchor.size() != domain.dim()) throw InvalidArgument("Generator: anchor dimension mismatch");
  if (!domain.contains(anchor)) throw DomainError("Generator: anchor outside the domain");
  auto impl = std::make_shared<Impl>(Impl{std::move(name), lambda, std::move(domain), std::move(value),
                                          std::move(gradient), std::move(anchor), {}, {}, {}, {}, {}});
  impl_ = std::move(impl);
}

Generator Generator::modified(const std::function<void(Impl&)>& edit) const {
  auto copy = std::make_shared<Impl>(*impl_);
  edit(*copy);
  return Generator(std::shared_ptr<const Impl>(std::move(copy)));
}

Generator Generator::with_hessian(MatrixFn hessian) const {
  return modified([&](Impl& i) { i.hessian = std::move(hessian); });
}

Generator Generator::with_inverse_mirror(VectorFn inverse) const {
  return modified([&](Impl& i) { i.inverse_mirror = std::move(inverse); });
}

Generator Generator::with_mirror(VectorFn mirror) const {
  return modified([&](Impl& i) { i.mirror = std::move(mirror); });
}

Generator Generator::with_dual_domain(Domain dual) const {
  if (dual.dim() != dim()) throw InvalidArgument("Generator: dual domain dimension mismatch");
  return modified([&](Impl& i) { i.dual_domain = std::move(dual); });
}

Generator Generator::with_conformal_hessian(MatrixFn hessian) const {
  return modified([&](Impl& i) { i.conformal_hessian = std::move(hessian); });
}

Matrix Generator::hessian(const Vector& theta) const {
  if (impl_->hessian) return impl_->hessian(theta);
  return hessian_fd(theta);
}

Matrix Generator::hessian_fd(const Vector& theta) const {
  Matrix h = fd_jacobian(impl_->gradient, theta);
  return 0.5 * (h + h.transpose());
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x) {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  const Index n = x.size();
  Matrix jac;
  for (Index i = 0; i < n; ++i) {
    const double h = base * (1.0 + std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    Vector col = (f(xp) - f(xm)) / (2.0 * h);
    if (i == 0) jac.resize(col.size(), n);
    jac.col(i) = col;
  }
  return jac;
}

}  // namespace xmd
