// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "xmd/random/rng.hpp"
#include "xmd/simplex/simplex_point.hpp"

namespace xmd {

/// Exponentially concave function on the simplex.
class PortfolioGenerator {
 public:
  enum class Kind { EqualWeighted, Diversity, Custom };
  using ValueFn = std::function<double(const SimplexPoint&)>;
  using GradientFn = std::function<Vector(const SimplexPoint&)>;
  using MapFn = std::function<SimplexPoint(const SimplexPoint&)>;

  /// phi(p) = (1/n) sum log p_i.
  static PortfolioGenerator equal_weighted();
  /// phi(p) = (1/alpha) log sum p_i^alpha, 0 <= alpha < 1; alpha = 0 is the equal-weighted limit.
  static PortfolioGenerator diversity(double alpha);
  static PortfolioGenerator custom(std::string name, ValueFn value, GradientFn gradient);

  /// Closed forms, used in place of the generic formulas when present.
  PortfolioGenerator with_portfolio_closed(MapFn pi) const;
  PortfolioGenerator with_transport_inverse(MapFn inverse) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double alpha() const { return alpha_; }

  double value(const SimplexPoint& p) const { return value_(p); }
  Vector gradient(const SimplexPoint& p) const { return gradient_(p); }
  const std::optional<MapFn>& portfolio_closed() const { return portfolio_closed_; }
  const std::optional<MapFn>& transport_inverse_closed() const { return transport_inverse_; }

 private:
  PortfolioGenerator(Kind kind, std::string name, double alpha, ValueFn value, GradientFn gradient)
      : kind_(kind), name_(std::move(name)), alpha_(alpha), value_(std::move(value)), gradient_(std::move(gradient)) {}

  Kind kind_;
  std::string name_;
  double alpha_ = 0.0;
  ValueFn value_;
  GradientFn gradient_;
  std::optional<MapFn> portfolio_closed_;
  std::optional<MapFn> transport_inverse_;
};

/// <grad, e_i - p> for every i.
Vector directional_derivs(const Vector& grad, const SimplexPoint& p);
Vector directional_derivs(const PortfolioGenerator& gen, const SimplexPoint& p);

/// log(1 + <grad phi(p), q - p>) - (phi(q) - phi(p)).
double l_divergence(const PortfolioGenerator& gen, const SimplexPoint& q, const SimplexPoint& p);

/// p_i (1 + directional derivative), closed form preferred.
SimplexPoint portfolio_map(const PortfolioGenerator& gen, const SimplexPoint& p);
/// Always the generic directional-derivative formula.
SimplexPoint portfolio_map_generic(const PortfolioGenerator& gen, const SimplexPoint& p);

/// p (+) pi(inverse(p)).
SimplexPoint transport_map(const PortfolioGenerator& gen, const SimplexPoint& p);
SimplexPoint transport_inverse(const PortfolioGenerator& gen, const SimplexPoint& q);

struct ConcavityReport {
  int samples = 0;
  int violations = 0;
  double worst = 0.0;  ///< most negative midpoint gap
};

/// Midpoint test of concavity of exp(phi) on random segments.
ConcavityReport exp_concavity_check(const PortfolioGenerator& gen, Index n, int samples, CounterRng& rng,
                                    double tol = 1e-10);

}  // namespace xmd
