// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/student_t.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "xmd/random/distributions.hpp"

namespace xmd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

void check_lambda(double lambda) {
  if (!(lambda > -2.0 && lambda < 0.0)) throw InvalidArgument("Student-t: lambda must lie in (-2, 0)");
}

// phi = a_q log Q - b_u log u + k0 with Q = lambda theta1^2 - 4 theta2, u = -theta2.
struct Pieces {
  double q, u;
  Vector dq, du;
};

Pieces pieces(const Vector& th, double lam) {
  Pieces p;
  p.q = lam * th[0] * th[0] - 4.0 * th[1];
  p.u = -th[1];
  if (!(p.q > 0.0) || !(p.u > 0.0)) throw DomainError("Student-t: theta outside Theta");
  p.dq = v2(2.0 * lam * th[0], -4.0);
  p.du = v2(0.0, -1.0);
  return p;
}

}  // namespace

double student_t_lambda(double nu) {
  if (!(nu > 0.0)) throw InvalidArgument("Student-t: nu must be positive");
  return -2.0 / (nu + 1.0);
}

void StudentTParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidArgument("Student-t: nu must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("Student-t: sigma must be positive");
  if (!std::isfinite(mu)) throw InvalidArgument("Student-t: mu must be finite");
}

double student_t_constant(double nu) {
  return std::lgamma(0.5 * nu) + 0.5 * std::log(nu * kPi) - std::lgamma(0.5 * (nu + 1.0));
}

Vector student_t_coords(const StudentTParams& params) {
  params.validate();
  const double lam = params.lambda();
  const double m = -lam * params.mu * params.mu + params.sigma * params.sigma * (lam + 2.0);
  return v2(2.0 * params.mu / m, -1.0 / m);
}

StudentTParams student_t_params(const Vector& theta, double nu) {
  const double lam = student_t_lambda(nu);
  if (!student_t_domain(lam).contains(theta)) throw DomainError("student_t_params: theta outside Theta");
  const double mu = -theta[0] / (2.0 * theta[1]);
  const double m = -1.0 / theta[1];
  const double s2 = (m + lam * mu * mu) / (lam + 2.0);
  if (!(s2 > 0.0)) throw DomainError("student_t_params: nonpositive scale");
  return StudentTParams{mu, std::sqrt(s2), nu};
}

Vector student_t_mirror(const Vector& theta, double lambda) {
  check_lambda(lambda);
  const double t1 = theta[0], t2 = theta[1];
  if (!(t2 < 0.0)) throw DomainError("student_t_mirror: theta2 must be negative");
  return v2(-t1 / (2.0 * t2), (lambda * t1 * t1 + t1 * t1 - 2.0 * t2) / (2.0 * (lambda + 2.0) * t2 * t2));
}

Vector student_t_inverse_mirror(const Vector& eta, double lambda) {
  check_lambda(lambda);
  const double s = 2.0 * (lambda + 1.0) * eta[0] * eta[0] - (lambda + 2.0) * eta[1];
  if (!(s < 0.0)) throw DomainError("student_t_inverse_mirror: eta outside H");
  return v2(-2.0 * eta[0] / s, 1.0 / s);
}

Vector student_t_eta(const StudentTParams& params) {
  params.validate();
  return v2(params.mu, params.mu * params.mu + params.sigma * params.sigma);
}

StudentTParams student_t_params_from_eta(const Vector& eta, double nu) {
  const double var = eta[1] - eta[0] * eta[0];
  if (!(var > 0.0)) throw DomainError("student_t_params_from_eta: eta outside H");
  return StudentTParams{eta[0], std::sqrt(var), nu};
}

Domain student_t_domain(double lambda) {
  check_lambda(lambda);
  Domain::Constraint c;
  c.name = "lambda theta1^2 - 4 theta2";
  c.value = [lambda](const Vector& th) { return lambda * th[0] * th[0] - 4.0 * th[1]; };
  c.gradient = [lambda](const Vector& th) { return v2(2.0 * lambda * th[0], -4.0); };
  return Domain::box(v2(-kInf, -kInf), v2(kInf, 0.0)).with_constraint(std::move(c));
}

Domain student_t_dual_domain() {
  Domain::Constraint c;
  c.name = "eta2 - eta1^2";
  c.value = [](const Vector& e) { return e[1] - e[0] * e[0]; };
  c.gradient = [](const Vector& e) { return v2(-2.0 * e[0], 1.0); };
  c.reflect = [](const Vector& e, double floor) {
    const double g = e[1] - e[0] * e[0];
    const double e1sq = e[0] * e[0];
    return v2(e[0], e1sq + std::abs(g) + floor * std::max(1.0, e1sq));
  };
  return Domain::whole(2).with_constraint(std::move(c));
}

Generator student_t_generator(double nu) {
  const double lam = student_t_lambda(nu);
  const double aq = 0.5 + 1.0 / lam;
  const double bu = 1.0 + 1.0 / lam;
  const double k0 = -0.5 * std::log(lam + 2.0) - std::log(2.0) - std::log(4.0) / lam + student_t_constant(nu);
  auto value = [=](const Vector& th) {
    const Pieces p = pieces(th, lam);
    return aq * std::log(p.q) - bu * std::log(p.u) + k0;
  };
  auto gradient = [=](const Vector& th) {
    const Pieces p = pieces(th, lam);
    return Vector(aq * p.dq / p.q - bu * p.du / p.u);
  };
  auto hessian = [=](const Vector& th) {
    const Pieces p = pieces(th, lam);
    Matrix d2q = Matrix::Zero(2, 2);
    d2q(0, 0) = 2.0 * lam;
    return Matrix(aq * (d2q / p.q - p.dq * p.dq.transpose() / (p.q * p.q)) +
                  bu * p.du * p.du.transpose() / (p.u * p.u));
  };
  // exp(lambda phi) = K Q^a u^b, so the Hessian of Phi_lambda is that of K Q^a u^b over lambda.
  const double a = lam / 2.0 + 1.0, b = -(lam + 1.0);
  auto conformal_hessian = [=](const Vector& th) {
    const Pieces p = pieces(th, lam);
    const double f = std::exp(lam * k0) * std::pow(p.q, a) * std::pow(p.u, b);
    const Vector g = a * p.dq / p.q + b * p.du / p.u;
    Matrix d2q = Matrix::Zero(2, 2);
    d2q(0, 0) = 2.0 * lam;
    const Matrix h = g * g.transpose() + a * d2q / p.q - a * p.dq * p.dq.transpose() / (p.q * p.q) -
                     b * p.du * p.du.transpose() / (p.u * p.u);
    return Matrix(f * h / lam);
  };
  const Vector anchor = student_t_coords(StudentTParams{0.0, 1.0, nu});
  return Generator("student-t(nu=" + std::to_string(nu) + ")", lam, student_t_domain(lam), value, gradient, anchor)
      .with_hessian(hessian)
      .with_conformal_hessian(conformal_hessian)
      .with_mirror([lam](const Vector& th) { return student_t_mirror(th, lam); })
      .with_inverse_mirror([lam](const Vector& e) { return student_t_inverse_mirror(e, lam); })
      .with_dual_domain(student_t_dual_domain());
}

LambdaExpFamily student_t_family(double nu) {
  LambdaExpFamily fam{"student-t", student_t_generator(nu), {}, {}};
  fam.statistics = [](const Vector& x) { return v2(x[0], x[0] * x[0]); };
  fam.sampler = [nu](const Vector& theta, CounterRng& rng) {
    Vector x(1);
    x[0] = student_t_sample(student_t_params(theta, nu), rng);
    return x;
  };
  return fam;
}

double student_t_sample(const StudentTParams& params, CounterRng& rng) {
  if (!(params.nu > 0.0)) throw InvalidArgument("student_t_sample: nu must be positive");
  return params.mu + params.sigma * standard_t_sample(params.nu, rng);
}

double student_t_log_density(const StudentTParams& params, double x) {
  params.validate();
  const double nu = params.nu;
  const double z = (x - params.mu) / params.sigma;
  return -student_t_constant(nu) - std::log(params.sigma) - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

}  // namespace xmd
