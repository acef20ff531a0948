// SPDX-License-Identifier: Apache-2.0
#include "xmd/core/duality.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <sstream>

namespace xmd {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double mirror_denominator(double lambda, const Vector& grad, const Vector& theta) {
  if (is_bregman(lambda)) return 1.0;
  return 1.0 - lambda * grad.dot(theta);
}

/// Damped Newton on r(x) = 0 with Armijo backtracking on |r|^2 / 2.
/// Trial points outside the domain, or where r throws, are rejected.
template <class Residual, class Jacobian>
Vector damped_newton(const Domain& domain, Residual residual, Jacobian jacobian, Vector x, double scale,
                     const NewtonOptions& opts, const char* what) {
  auto safe_residual = [&](const Vector& y, Vector& r) {
    if (!domain.contains(y)) return false;
    try {
      r = residual(y);
    } catch (const Error&) {
      return false;
    }
    return r.allFinite();
  };
  Vector r;
  if (!safe_residual(x, r)) throw DomainError(std::string(what) + ": initial guess is not admissible");
  const double tol = opts.tol * scale;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= tol) return x;
    Matrix J = jacobian(x);
    Eigen::PartialPivLU<Matrix> lu(J);
    Vector step = -lu.solve(r);
    if (!step.allFinite()) throw ConvergenceError(std::string(what) + ": singular Jacobian", r.norm());
    const double merit = 0.5 * r.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    for (int b = 0; b < opts.max_backtracks; ++b, t *= 0.5) {
      Vector y = x + t * step;
      Vector ry;
      if (!safe_residual(y, ry)) continue;
      if (0.5 * ry.squaredNorm() <= (1.0 - 2.0 * opts.armijo * t) * merit) {
        x = std::move(y);
        r = std::move(ry);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (r.lpNorm<Eigen::Infinity>() <= 64.0 * tol) return x;
      throw ConvergenceError(std::string(what) + ": line search failed", r.norm());
    }
  }
  if (r.lpNorm<Eigen::Infinity>() <= tol) return x;
  throw ConvergenceError(std::string(what) + ": no convergence after max iterations", r.norm());
}

}  // namespace

double scaled_log1p(double s, double lambda) {
  if (is_bregman(lambda)) return s;
  const double arg = 1.0 + lambda * s;
  if (!(arg > kLogFloor)) throw DomainError("log argument 1 + lambda*s = " + fmt_num(arg) + " is not positive");
  return std::log1p(lambda * s) / lambda;
}

double log_cost(const Vector& x, const Vector& y, double lambda) {
  if (x.size() != y.size()) throw InvalidArgument("log_cost: dimension mismatch");
  return -scaled_log1p(x.dot(y), lambda);
}

DualPair lambda_mirror(const Generator& gen, const Vector& theta) {
  if (!gen.domain().contains(theta)) throw DomainError("lambda_mirror: theta outside the domain");
  Vector grad = gen.gradient(theta);
  const double den = mirror_denominator(gen.lambda(), grad, theta);
  if (!(den > 0.0)) throw RegularityError("lambda_mirror: 1 - lambda<grad phi, theta> = " + fmt_num(den), den);
  DualPair p{theta, grad / den, 1.0 / den};
  return p;
}

Vector inverse_mirror(const Generator& gen, const Vector& eta, const std::optional<Vector>& guess) {
  if (gen.dual_domain() && !gen.dual_domain()->contains(eta))
    throw DomainError("inverse_mirror: eta outside the dual domain");
  if (gen.inverse_mirror_closed()) {
    Vector theta = (*gen.inverse_mirror_closed())(eta);
    if (!gen.domain().contains(theta)) throw DomainError("inverse_mirror: closed form left the domain");
    return theta;
  }
  return inverse_mirror_newton(gen, eta, guess);
}

Vector inverse_mirror_newton(const Generator& gen, const Vector& eta, const std::optional<Vector>& guess,
                             const NewtonOptions& opts) {
  if (eta.size() != gen.dim()) throw InvalidArgument("inverse_mirror_newton: dimension mismatch");
  if (!eta.allFinite()) throw DomainError("inverse_mirror_newton: eta is not finite");
  Vector x0 = guess && gen.domain().contains(*guess) ? *guess : gen.anchor();
  auto res = [&](const Vector& th) { return Vector(lambda_mirror(gen, th).eta - eta); };
  auto jac = [&](const Vector& th) { return mirror_jacobian(gen, th); };
  const double scale = 1.0 + eta.lpNorm<Eigen::Infinity>();
  return damped_newton(gen.domain(), res, jac, std::move(x0), scale, opts, "inverse_mirror_newton");
}

double conjugate_value(const Generator& gen, const DualPair& pair) {
  return -gen.value(pair.theta) - log_cost(pair.theta, pair.eta, gen.lambda());
}

double bregman_div(const Generator& gen_convex, const Vector& theta, const Vector& theta_p) {
  const Domain& d = gen_convex.domain();
  if (!d.contains(theta) || !d.contains(theta_p)) throw DomainError("bregman_div: point outside the domain");
  return gen_convex.value(theta) - gen_convex.value(theta_p) - gen_convex.gradient(theta_p).dot(theta - theta_p);
}

double log_div(const Generator& gen, const Vector& theta, const Vector& theta_p) {
  const Domain& d = gen.domain();
  if (!d.contains(theta) || !d.contains(theta_p)) throw DomainError("log_div: point outside the domain");
  if (theta == theta_p) return 0.0;
  const double s = gen.gradient(theta_p).dot(theta - theta_p);
  return gen.value(theta) - gen.value(theta_p) - scaled_log1p(s, gen.lambda());
}

double log_div_self_dual(const Generator& gen, const Vector& theta, const Vector& eta_p,
                         const std::optional<Vector>& theta_p_guess) {
  Vector theta_p = inverse_mirror(gen, eta_p, theta_p_guess);
  DualPair pp{theta_p, eta_p, 1.0 + (is_bregman(gen.lambda()) ? 0.0 : gen.lambda() * theta_p.dot(eta_p))};
  const double psi = conjugate_value(gen, pp);
  return gen.value(theta) + psi - scaled_log1p(theta.dot(eta_p), gen.lambda());
}

MetricAtPoint metric(const Generator& gen, const Vector& theta) {
  if (!gen.domain().contains(theta)) throw DomainError("metric: theta outside the domain");
  Matrix g = gen.hessian(theta);
  const double lam = gen.lambda();
  if (!is_bregman(lam)) {
    Vector a = gen.gradient(theta);
    g.noalias() += lam * a * a.transpose();
  }
  g = 0.5 * (g + g.transpose());
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    const double m = es.eigenvalues().minCoeff();
    throw RegularityError("metric: G is not positive definite, min eigenvalue " + fmt_num(m), m);
  }
  MetricAtPoint out;
  out.g_inv = llt.solve(Matrix::Identity(g.rows(), g.cols()));
  out.g = std::move(g);
  out.conformal_factor = is_bregman(lam) ? 1.0 : std::exp(-lam * gen.value(theta));
  return out;
}

Matrix metric_conformal_form(const Generator& gen, const Vector& theta) {
  const double lam = gen.lambda();
  if (is_bregman(lam)) return gen.hessian(theta);
  return std::exp(-lam * gen.value(theta)) * phi_lambda_hessian(gen, theta);
}

Matrix metric_inverse_sm(const Generator& gen, const DualPair& pair, const Matrix& jac_theta_eta) {
  const Index d = pair.theta.size();
  if (jac_theta_eta.rows() != d || jac_theta_eta.cols() != d)
    throw InvalidArgument("metric_inverse_sm: Jacobian has the wrong shape");
  Eigen::FullPivLU<Matrix> lu(jac_theta_eta);
  if (!lu.isInvertible()) throw InvalidArgument("metric_inverse_sm: singular Jacobian");
  Matrix right = Matrix::Identity(d, d);
  if (!is_bregman(gen.lambda())) right.noalias() += gen.lambda() * pair.eta * pair.theta.transpose();
  return pair.pi * jac_theta_eta * right;
}

Matrix mirror_jacobian(const Generator& gen, const Vector& theta) {
  DualPair p = lambda_mirror(gen, theta);
  const Index d = theta.size();
  Matrix g = gen.hessian(theta);
  Matrix left = Matrix::Identity(d, d);
  const double lam = gen.lambda();
  if (!is_bregman(lam)) {
    Vector a = gen.gradient(theta);
    g.noalias() += lam * a * a.transpose();
    left.noalias() += lam * p.eta * theta.transpose();
  }
  return p.pi * left * g;
}

double phi_lambda(const Generator& gen, const Vector& theta) {
  const double lam = gen.lambda();
  const double v = gen.value(theta);
  if (is_bregman(lam)) return v;
  return std::expm1(lam * v) / lam;
}

Vector phi_lambda_gradient(const Generator& gen, const Vector& theta) {
  const double lam = gen.lambda();
  if (is_bregman(lam)) return gen.gradient(theta);
  return std::exp(lam * gen.value(theta)) * gen.gradient(theta);
}

Matrix phi_lambda_hessian(const Generator& gen, const Vector& theta) {
  if (gen.conformal_hessian_closed()) return (*gen.conformal_hessian_closed())(theta);
  const double lam = gen.lambda();
  Matrix h = gen.hessian(theta);
  if (is_bregman(lam)) return h;
  Vector a = gen.gradient(theta);
  h.noalias() += lam * a * a.transpose();
  return std::exp(lam * gen.value(theta)) * h;
}

double conformal_bregman_div(const Generator& gen, const Vector& theta, const Vector& theta_p) {
  const Domain& d = gen.domain();
  if (!d.contains(theta) || !d.contains(theta_p)) throw DomainError("conformal_bregman_div: point outside the domain");
  return phi_lambda(gen, theta) - phi_lambda(gen, theta_p) - phi_lambda_gradient(gen, theta_p).dot(theta - theta_p);
}

Vector inverse_conformal_gradient(const Generator& gen, const Vector& zeta, const std::optional<Vector>& guess,
                                  const NewtonOptions& opts) {
  if (zeta.size() != gen.dim()) throw InvalidArgument("inverse_conformal_gradient: dimension mismatch");
  if (!zeta.allFinite()) throw DomainError("inverse_conformal_gradient: zeta is not finite");
  Vector x0 = guess && gen.domain().contains(*guess) ? *guess : gen.anchor();
  auto res = [&](const Vector& th) { return Vector(phi_lambda_gradient(gen, th) - zeta); };
  auto jac = [&](const Vector& th) { return phi_lambda_hessian(gen, th); };
  const double scale = 1.0 + zeta.lpNorm<Eigen::Infinity>();
  return damped_newton(gen.domain(), res, jac, std::move(x0), scale, opts, "inverse_conformal_gradient");
}

Generator conformal_potential(const Generator& gen) {
  if (is_bregman(gen.lambda())) return gen;
  Generator g0(gen.name() + "/conformal", 0.0, gen.domain(),
               [gen](const Vector& th) { return phi_lambda(gen, th); },
               [gen](const Vector& th) { return phi_lambda_gradient(gen, th); }, gen.anchor());
  if (gen.has_hessian() || gen.conformal_hessian_closed())
    g0 = g0.with_hessian([gen](const Vector& th) { return phi_lambda_hessian(gen, th); });
  return g0;
}

Generator dual_generator(const Generator& gen) {
  if (!gen.dual_domain()) throw InvalidArgument("dual_generator: generator has no dual domain");
  const double lam = gen.lambda();
  const Vector anchor_eta = lambda_mirror(gen, gen.anchor()).eta;
  auto theta_of = [gen](const Vector& eta) { return inverse_mirror(gen, eta); };
  auto value = [gen, theta_of, lam](const Vector& eta) {
    Vector th = theta_of(eta);
    return -gen.value(th) - log_cost(th, eta, lam);
  };
  auto gradient = [theta_of, lam](const Vector& eta) {
    Vector th = theta_of(eta);
    const double pi = is_bregman(lam) ? 1.0 : 1.0 + lam * th.dot(eta);
    return Vector(th / pi);
  };
  Generator dual(gen.name() + "/dual", lam, *gen.dual_domain(), value, gradient, anchor_eta);
  dual = dual.with_dual_domain(gen.domain())
             .with_inverse_mirror([gen](const Vector& th) { return lambda_mirror(gen, th).eta; })
             .with_mirror(theta_of);
  return dual;
}

RegularityReport check_regularity(const Generator& gen, const Vector& theta) {
  RegularityReport rep;
  Vector a = gen.gradient(theta);
  rep.denominator = mirror_denominator(gen.lambda(), a, theta);
  Matrix h = phi_lambda_hessian(gen, theta);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  Eigen::LLT<Matrix> llt(0.5 * (h + h.transpose()));
  rep.regular = rep.denominator > 0.0 && llt.info() == Eigen::Success;
  return rep;
}

}  // namespace xmd
