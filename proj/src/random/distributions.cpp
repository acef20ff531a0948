// SPDX-License-Identifier: Apache-2.0
#include "xmd/random/distributions.hpp"

#include <cmath>
#include <numbers>

namespace xmd {

double standard_normal(CounterRng& rng) {
  // Box-Muller, one output per pair so the draw is a pure function of the counter.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double gamma_mt(double shape, CounterRng& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double gamma_sample(double shape, CounterRng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw InvalidArgument("gamma_sample: shape must be positive");
  if (shape >= 1.0) return gamma_mt(shape, rng);
  return std::exp(log_gamma_sample(shape, rng));
}

double log_gamma_sample(double shape, CounterRng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw InvalidArgument("log_gamma_sample: shape must be positive");
  if (shape >= 1.0) return std::log(gamma_mt(shape, rng));
  // Gamma(a) = Gamma(a + 1) U^(1/a)
  const double g = gamma_mt(shape + 1.0, rng);
  return std::log(g) + std::log(rng.uniform()) / shape;
}

double chi_square_sample(double dof, CounterRng& rng) { return 2.0 * gamma_sample(0.5 * dof, rng); }

double standard_t_sample(double dof, CounterRng& rng) {
  const double z = standard_normal(rng);
  const double w = chi_square_sample(dof, rng);
  return z / std::sqrt(w / dof);
}

Vector dirichlet_sample(const Vector& alpha, CounterRng& rng) {
  const Index n = alpha.size();
  if (n < 2) throw InvalidArgument("dirichlet_sample: need at least two components");
  Vector lg(n);
  for (Index i = 0; i < n; ++i) lg[i] = log_gamma_sample(alpha[i], rng);
  const double m = lg.maxCoeff();
  Vector w = (lg.array() - m).exp().matrix();
  w /= w.sum();
  for (Index i = 0; i < n; ++i) w[i] = std::max(w[i], 1e-300);
  return w / w.sum();
}

Vector symmetric_dirichlet_sample(Index n, double concentration, CounterRng& rng) {
  return dirichlet_sample(Vector::Constant(n, concentration), rng);
}

}  // namespace xmd
