// SPDX-License-Identifier: Apache-2.0
#include "xmd/simplex/portfolio.hpp"

#include <cmath>

#include "xmd/random/distributions.hpp"

namespace xmd {

namespace {

double log_sum_exp(const Vector& x) {
  const double m = x.maxCoeff();
  return m + std::log((x.array() - m).exp().sum());
}

}  // namespace

PortfolioGenerator PortfolioGenerator::equal_weighted() {
  PortfolioGenerator g(
      Kind::EqualWeighted, "equal-weighted", 0.0, [](const SimplexPoint& p) { return p.log_weights().mean(); },
      [](const SimplexPoint& p) {
        return Vector((1.0 / (static_cast<double>(p.size()) * p.weights().array())).matrix());
      });
  return g.with_portfolio_closed([](const SimplexPoint& p) { return SimplexPoint::barycenter(p.size()); })
      .with_transport_inverse([](const SimplexPoint& q) { return q; });
}

PortfolioGenerator PortfolioGenerator::diversity(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("diversity: alpha must lie in [0, 1)");
  if (alpha == 0.0) {
    // Same function of p as the equal-weighted generator, tagged as the diversity family.
    PortfolioGenerator eq = equal_weighted();
    eq.kind_ = Kind::Diversity;
    eq.name_ = "diversity(0)";
    return eq;
  }
  const double a = alpha;
  PortfolioGenerator g(
      Kind::Diversity, "diversity(" + std::to_string(alpha) + ")", alpha,
      [a](const SimplexPoint& p) { return log_sum_exp(a * p.log_weights()) / a; },
      [a](const SimplexPoint& p) {
        // p_i^(a-1) / sum_j p_j^a
        Vector lp = p.log_weights();
        const double ls = log_sum_exp(a * lp);
        return Vector(((a - 1.0) * lp.array() - ls).exp().matrix());
      });
  return g.with_portfolio_closed([a](const SimplexPoint& p) { return power(a, p); })
      .with_transport_inverse([a](const SimplexPoint& q) { return power(1.0 / (1.0 - a), q); });
}

PortfolioGenerator PortfolioGenerator::custom(std::string name, ValueFn value, GradientFn gradient) {
  if (!value || !gradient) throw InvalidArgument("PortfolioGenerator::custom: value and gradient are required");
  return PortfolioGenerator(Kind::Custom, std::move(name), 0.0, std::move(value), std::move(gradient));
}

PortfolioGenerator PortfolioGenerator::with_portfolio_closed(MapFn pi) const {
  PortfolioGenerator g = *this;
  g.portfolio_closed_ = std::move(pi);
  return g;
}

PortfolioGenerator PortfolioGenerator::with_transport_inverse(MapFn inverse) const {
  PortfolioGenerator g = *this;
  g.transport_inverse_ = std::move(inverse);
  return g;
}

Vector directional_derivs(const Vector& grad, const SimplexPoint& p) {
  if (grad.size() != p.size()) throw InvalidArgument("directional_derivs: dimension mismatch");
  return (grad.array() - grad.dot(p.weights())).matrix();
}

Vector directional_derivs(const PortfolioGenerator& gen, const SimplexPoint& p) {
  return directional_derivs(gen.gradient(p), p);
}

double l_divergence(const PortfolioGenerator& gen, const SimplexPoint& q, const SimplexPoint& p) {
  if (p.size() != q.size()) throw InvalidArgument("l_divergence: dimension mismatch");
  const double s = gen.gradient(p).dot(q.weights() - p.weights());
  if (!(1.0 + s > kLogFloor)) throw DomainError("l_divergence: log argument is not positive");
  return std::log1p(s) - (gen.value(q) - gen.value(p));
}

SimplexPoint portfolio_map_generic(const PortfolioGenerator& gen, const SimplexPoint& p) {
  Vector d = directional_derivs(gen, p);
  Vector w(p.size());
  for (Index i = 0; i < p.size(); ++i) {
    const double f = 1.0 + d[i];
    if (!(f > 0.0)) throw DomainError("portfolio_map: nonpositive portfolio weight");
    w[i] = p[i] * f;
  }
  return SimplexPoint::normalize(w);
}

SimplexPoint portfolio_map(const PortfolioGenerator& gen, const SimplexPoint& p) {
  if (gen.portfolio_closed()) return (*gen.portfolio_closed())(p);
  return portfolio_map_generic(gen, p);
}

SimplexPoint transport_map(const PortfolioGenerator& gen, const SimplexPoint& p) {
  return perturb(p, portfolio_map(gen, inverse(p)));
}

SimplexPoint transport_inverse(const PortfolioGenerator& gen, const SimplexPoint& q) {
  if (!gen.transport_inverse_closed())
    throw InvalidArgument("transport_inverse: no closed-form inverse for generator " + gen.name());
  return (*gen.transport_inverse_closed())(q);
}

ConcavityReport exp_concavity_check(const PortfolioGenerator& gen, Index n, int samples, CounterRng& rng,
                                    double tol) {
  ConcavityReport rep;
  for (int s = 0; s < samples; ++s) {
    SimplexPoint a(symmetric_dirichlet_sample(n, 1.0, rng));
    SimplexPoint b(symmetric_dirichlet_sample(n, 1.0, rng));
    SimplexPoint m(0.5 * (a.weights() + b.weights()));
    const double gap = std::exp(gen.value(m)) - 0.5 * (std::exp(gen.value(a)) + std::exp(gen.value(b)));
    ++rep.samples;
    if (gap < -tol) ++rep.violations;
    rep.worst = std::min(rep.worst, gap);
  }
  return rep;
}

}  // namespace xmd
