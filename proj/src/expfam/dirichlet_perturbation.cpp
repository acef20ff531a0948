// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/dirichlet_perturbation.hpp"

#include <cmath>
#include <string>

#include "xmd/random/distributions.hpp"

namespace xmd {

Vector dirichlet_theta(const SimplexPoint& p, double lambda) {
  if (!(lambda < 0.0)) throw InvalidArgument("dirichlet_theta: lambda must be negative");
  const Vector& w = p.weights();
  return (w[0] / (lambda * w.tail(w.size() - 1).array())).matrix();
}

Vector dirichlet_eta(const SimplexPoint& p) {
  const Vector& w = p.weights();
  return w.tail(w.size() - 1) / w[0];
}

SimplexPoint dirichlet_p_from_eta(const Vector& eta) {
  if ((eta.array() <= 0.0).any()) throw DomainError("dirichlet_p_from_eta: eta must be positive");
  Vector w(eta.size() + 1);
  w[0] = 1.0;
  w.tail(eta.size()) = eta;
  return SimplexPoint::normalize(w);
}

Vector dirichlet_statistics(const Vector& q) {
  if (q.size() < 2 || (q.array() <= 0.0).any()) throw DomainError("dirichlet_statistics: q must be positive");
  const Vector lq = q.array().log().matrix();
  return (lq.tail(q.size() - 1).array() - lq[0]).exp().matrix();
}

Generator dirichlet_generator(Index d, double lambda) {
  if (d < 1) throw InvalidArgument("dirichlet_generator: d must be at least 1");
  if (!(lambda < 0.0)) throw InvalidArgument("dirichlet_generator: lambda must be negative");
  const double c = 1.0 / (lambda * static_cast<double>(d + 1));
  auto value = [c](const Vector& th) {
    if ((th.array() >= 0.0).any()) throw DomainError("dirichlet potential: theta must be negative");
    return c * (-th.array()).log().sum();
  };
  auto gradient = [c](const Vector& th) { return Vector(c * th.array().inverse()); };
  auto hessian = [c](const Vector& th) { return Matrix((-c * th.array().square().inverse()).matrix().asDiagonal()); };
  Vector anchor = Vector::Constant(d, 1.0 / lambda);
  return Generator("dirichlet-perturbation(d=" + std::to_string(d) + ")", lambda, Domain::negative_orthant(d), value,
                   gradient, anchor)
      .with_hessian(hessian)
      .with_mirror([lambda](const Vector& th) { return Vector((lambda * th.array()).inverse()); })
      .with_inverse_mirror([lambda](const Vector& e) {
        if ((e.array() <= 0.0).any()) throw DomainError("dirichlet inverse mirror: eta must be positive");
        return Vector((lambda * e.array()).inverse());
      })
      .with_dual_domain(Domain::positive_orthant(d));
}

LambdaExpFamily dirichlet_family(Index d, double lambda) {
  LambdaExpFamily fam{"dirichlet-perturbation", dirichlet_generator(d, lambda), {}, {}};
  fam.statistics = [](const Vector& q) { return dirichlet_statistics(q); };
  fam.sampler = [lambda](const Vector& theta, CounterRng& rng) {
    const Vector eta = (lambda * theta.array()).inverse().matrix();
    const DirichletPerturbModel model{dirichlet_p_from_eta(eta), -lambda};
    return dirichlet_perturb_sample(model, rng).weights();
  };
  return fam;
}

SimplexPoint dirichlet_perturb_sample(const DirichletPerturbModel& model, CounterRng& rng) {
  if (!(model.sigma_noise > 0.0)) throw InvalidArgument("dirichlet_perturb_sample: sigma must be positive");
  const Index n = model.p.size();
  const double conc = 1.0 / (model.sigma_noise * static_cast<double>(n));
  const SimplexPoint dnoise(symmetric_dirichlet_sample(n, conc, rng));
  return perturb(model.p, dnoise);
}

}  // namespace xmd
