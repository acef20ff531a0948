// SPDX-License-Identifier: Apache-2.0
#include "xmd/core/generators.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

namespace xmd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector scalar(double v) { return Vector::Constant(1, v); }
Matrix scalar_m(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

Generator neg_half_log_generator(double lambda) {
  if (!(lambda > -2.0)) throw InvalidArgument("neg_half_log_generator: requires lambda > -2");
  const double lam = lambda;
  Generator g("neg_half_log", lam, Domain::positive_orthant(1),
              [](const Vector& t) { return -0.5 * std::log(t[0]); },
              [](const Vector& t) { return scalar(-0.5 / t[0]); }, scalar(1.0));
  return g.with_hessian([](const Vector& t) { return scalar_m(0.5 / (t[0] * t[0])); })
      .with_mirror([lam](const Vector& t) { return scalar(-1.0 / ((2.0 + lam) * t[0])); })
      .with_inverse_mirror([lam](const Vector& e) { return scalar(-1.0 / ((2.0 + lam) * e[0])); })
      .with_dual_domain(Domain::negative_orthant(1))
      .with_conformal_hessian([lam](const Vector& t) {
        if (is_bregman(lam)) return scalar_m(0.5 / (t[0] * t[0]));
        return scalar_m(0.25 * (lam + 2.0) * std::pow(t[0], -0.5 * lam - 2.0));
      });
}

Generator linear_generator(double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("linear_generator: requires lambda > 0");
  const double lam = lambda;
  Generator g("linear", lam, Domain::box(scalar(-kInf), scalar(1.0 / lam)),
              [](const Vector& t) { return t[0]; }, [](const Vector&) { return scalar(1.0); }, scalar(0.0));
  return g.with_hessian([](const Vector&) { return scalar_m(0.0); })
      .with_mirror([lam](const Vector& t) { return scalar(1.0 / (1.0 - lam * t[0])); })
      .with_inverse_mirror([lam](const Vector& e) { return scalar((1.0 - 1.0 / e[0]) / lam); })
      .with_dual_domain(Domain::positive_orthant(1))
      .with_conformal_hessian([lam](const Vector& t) { return scalar_m(lam * std::exp(lam * t[0])); });
}

Generator half_square_generator(double lambda) {
  const double lam = lambda;
  Domain dom = Domain::whole(1);
  Domain dual = Domain::whole(1);
  if (!is_bregman(lam)) {
    const double r = 1.0 / std::sqrt(std::abs(lam));
    dom = Domain::box(scalar(-r), scalar(r));
    if (lam < 0.0) dual = Domain::box(scalar(-0.5 * r), scalar(0.5 * r));
  }
  Generator g("half_square", lam, dom, [](const Vector& t) { return 0.5 * t[0] * t[0]; },
              [](const Vector& t) { return scalar(t[0]); }, scalar(0.0));
  return g.with_hessian([](const Vector&) { return scalar_m(1.0); })
      .with_mirror([lam](const Vector& t) { return scalar(t[0] / (1.0 - lam * t[0] * t[0])); })
      .with_inverse_mirror([lam](const Vector& e) {
        return scalar(2.0 * e[0] / (1.0 + std::sqrt(1.0 + 4.0 * lam * e[0] * e[0])));
      })
      .with_dual_domain(dual)
      .with_conformal_hessian([lam](const Vector& t) {
        const double s = t[0] * t[0];
        return scalar_m((1.0 + lam * s) * std::exp(0.5 * lam * s));
      });
}

Generator quadratic_generator(const Matrix& a, double lambda) {
  const Index d = a.rows();
  if (a.cols() != d) throw InvalidArgument("quadratic_generator: A must be square");
  if ((a - a.transpose()).norm() > 1e-12 * (1.0 + a.norm()))
    throw InvalidArgument("quadratic_generator: A must be symmetric");
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw InvalidArgument("quadratic_generator: A must be positive definite");
  const Matrix a_inv = llt.solve(Matrix::Identity(d, d));
  const double lam = lambda;
  const double mag = std::abs(lam);

  Domain dom = Domain::whole(d);
  Domain dual = Domain::whole(d);
  if (!is_bregman(lam)) {
    dom = dom.with_constraint({"quadratic_form",
                               [a, mag](const Vector& t) { return 1.0 - mag * t.dot(a * t); },
                               [a, mag](const Vector& t) { return Vector(-2.0 * mag * (a * t)); },
                               {}});
    if (lam < 0.0)
      dual = dual.with_constraint({"dual_quadratic_form",
                                   [a_inv, mag](const Vector& e) { return 1.0 - 4.0 * mag * e.dot(a_inv * e); },
                                   [a_inv, mag](const Vector& e) { return Vector(-8.0 * mag * (a_inv * e)); },
                                   {}});
  }
  Generator g("quadratic", lam, dom, [a](const Vector& t) { return 0.5 * t.dot(a * t); },
              [a](const Vector& t) { return Vector(a * t); }, Vector::Zero(d));
  return g.with_hessian([a](const Vector&) { return a; })
      .with_mirror([a, lam](const Vector& t) {
        Vector at = a * t;
        const double den = is_bregman(lam) ? 1.0 : 1.0 - lam * t.dot(at);
        return Vector(at / den);
      })
      .with_inverse_mirror([a_inv, lam](const Vector& e) {
        Vector ae = a_inv * e;
        if (is_bregman(lam)) return ae;
        // sqrt(theta^T A theta) solves the scalar half-square inversion.
        const double r = std::sqrt(std::max(0.0, e.dot(ae)));
        const double t = 2.0 * r / (1.0 + std::sqrt(1.0 + 4.0 * lam * r * r));
        return Vector((1.0 - lam * t * t) * ae);
      })
      .with_dual_domain(dual)
      .with_conformal_hessian([a, lam](const Vector& t) {
        Vector at = a * t;
        if (is_bregman(lam)) return Matrix(a);
        return Matrix(std::exp(0.5 * lam * t.dot(at)) * (a + lam * at * at.transpose()));
      });
}

std::vector<Generator> closed_form_examples(double lambda) {
  std::vector<Generator> out;
  if (lambda > -2.0) out.push_back(neg_half_log_generator(lambda));
  if (lambda > 0.0) out.push_back(linear_generator(lambda));
  out.push_back(half_square_generator(lambda));
  return out;
}

}  // namespace xmd
