// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/escort.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "xmd/core/duality.hpp"

namespace xmd {

namespace {

using Integrand = std::function<double(double)>;

double gk(const Integrand& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

/// Integrals of several integrands over the real line: a core interval [c - r s, c + r s], then
/// shells [c + r s, c + 2 r s] on both sides until every shell is below tol relative to the total.
std::vector<double> integrate_widening(const std::vector<Integrand>& fs, double center, double scale, double tol) {
  constexpr int kMaxDoublings = 160;
  double r = 8.0 * scale;
  std::vector<double> total(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) total[j] = gk(fs[j], center - r, center + r);
  for (int it = 0; it < kMaxDoublings; ++it) {
    bool settled = true;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const double shell = gk(fs[j], center + r, center + 2.0 * r) + gk(fs[j], center - 2.0 * r, center - r);
      total[j] += shell;
      if (!std::isfinite(total[j])) throw ConvergenceError("escort quadrature: non-finite integral", shell);
      if (std::abs(shell) > tol * std::abs(total[j])) settled = false;
    }
    r *= 2.0;
    if (settled) return total;
  }
  throw ConvergenceError("escort quadrature: tails did not settle after interval widening", r);
}

}  // namespace

Vector escort_expectation_numeric(const StudentTParams& params, double tol) {
  params.validate();
  return escort_expectation_numeric(student_t_family(params.nu), student_t_coords(params), tol);
}

Vector escort_expectation_numeric(const LambdaExpFamily& model_1d, const Vector& theta, double tol) {
  const double lam = model_1d.lambda();
  const double q = 1.0 - lam;
  auto escort_weight = [&](double x) {
    Vector xv(1);
    xv[0] = x;
    const Vector y = model_1d.statistics(xv);
    const double arg = 1.0 + lam * theta.dot(y);
    return arg > 0.0 ? std::exp(q * std::log(arg) / lam) : 0.0;
  };
  const Index d = model_1d.dim();
  std::vector<Integrand> fs;
  fs.emplace_back(escort_weight);
  for (Index i = 0; i < d; ++i)
    fs.emplace_back([&, i](double x) {
      Vector xv(1);
      xv[0] = x;
      return model_1d.statistics(xv)[i] * escort_weight(x);
    });
  double center = 0.0, scale = 1.0;
  if (d == 2 && theta[1] < 0.0) {
    // Student-t type: mode at -theta1 / (2 theta2), width from -1 / theta2.
    center = -theta[0] / (2.0 * theta[1]);
    scale = std::sqrt(-1.0 / theta[1]);
  }
  const std::vector<double> ints = integrate_widening(fs, center, scale, tol);
  Vector eta(d);
  for (Index i = 0; i < d; ++i) eta[i] = ints[static_cast<std::size_t>(i) + 1] / ints[0];
  return eta;
}

double density_integral_numeric(const LambdaExpFamily& model_1d, const Vector& theta, double tol) {
  Integrand f = [&](double x) {
    Vector xv(1);
    xv[0] = x;
    try {
      return std::exp(log_density_stat(model_1d, theta, model_1d.statistics(xv)));
    } catch (const DomainError&) {
      return 0.0;
    }
  };
  double center = 0.0, scale = 1.0;
  if (model_1d.dim() == 2 && theta[1] < 0.0) {
    center = -theta[0] / (2.0 * theta[1]);
    scale = std::sqrt(-1.0 / theta[1]);
  }
  return integrate_widening({f}, center, scale, tol)[0];
}

Vector escort_expectation_mc(const LambdaExpFamily& model, const Vector& theta, long n_samples, CounterRng& rng) {
  if (n_samples <= 0) throw InvalidArgument("escort_expectation_mc: need a positive sample count");
  const double lam = model.lambda();
  Vector num = Vector::Zero(model.dim());
  double den = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    const Vector y = model.statistics(model.sampler(theta, rng));
    // w = 1 / (1 + lambda <theta, y>), evaluated after scaling y to avoid overflow.
    const double s = std::max(1.0, y.lpNorm<Eigen::Infinity>());
    const double ws = 1.0 / (1.0 / s + lam * theta.dot(y / s));
    num += ws * (y / s);
    den += ws / s;
  }
  return num / den;
}

FisherReport fisher_metric_check(const LambdaExpFamily& model, const Vector& theta, long n_samples,
                                 CounterRng& rng) {
  if (n_samples <= 0) throw InvalidArgument("fisher_metric_check: need a positive sample count");
  if (is_bregman(model.lambda())) throw InvalidArgument("fisher_metric_check: registered for lambda != 0 only");
  const double lam = model.lambda();
  const Vector grad_phi = model.potential.gradient(theta);
  const Index d = model.dim();
  Matrix acc = Matrix::Zero(d, d);
  for (long i = 0; i < n_samples; ++i) {
    const Vector y = model.statistics(model.sampler(theta, rng));
    const double s = std::max(1.0, y.lpNorm<Eigen::Infinity>());
    const Vector score = (y / s) / (1.0 / s + lam * theta.dot(y / s)) - grad_phi;
    acc.noalias() += score * score.transpose();
  }
  FisherReport rep;
  rep.n_samples = n_samples;
  rep.fisher = acc / static_cast<double>(n_samples);
  rep.g = metric(model.potential, theta).g;
  rep.rel_error = (rep.g - (1.0 - lam) * rep.fisher).norm() / rep.g.norm();
  rep.entry_ratio = rep.g.array() / rep.fisher.array();
  return rep;
}

}  // namespace xmd
