// SPDX-License-Identifier: Apache-2.0
#include "xmd/core/domain.hpp"

#include <cmath>
#include <limits>

namespace xmd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Domain Domain::whole(Index dim) {
  return Domain(Vector::Constant(dim, -kInf), Vector::Constant(dim, kInf));
}

Domain Domain::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) throw InvalidArgument("Domain::box: bound sizes differ");
  for (Index i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i])) throw InvalidArgument("Domain::box: empty interval");
  return Domain(std::move(lower), std::move(upper));
}

Domain Domain::positive_orthant(Index dim) { return box(Vector::Zero(dim), Vector::Constant(dim, kInf)); }

Domain Domain::negative_orthant(Index dim) { return box(Vector::Constant(dim, -kInf), Vector::Zero(dim)); }

Domain Domain::with_constraint(Constraint c) const {
  if (!c.value) throw InvalidArgument("Domain::with_constraint: missing value function");
  Domain out = *this;
  out.constraints_.push_back(std::move(c));
  return out;
}

bool Domain::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return false;
    if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
  }
  for (const auto& c : constraints_)
    if (!(c.value(x) > 0.0)) return false;
  return true;
}

double Domain::boundary_margin(const Vector& x) const {
  double m = kInf;
  for (Index i = 0; i < x.size(); ++i) {
    m = std::min(m, x[i] - lower_[i]);
    m = std::min(m, upper_[i] - x[i]);
  }
  for (const auto& c : constraints_) {
    double g = c.value(x);
    double scale = 1.0;
    if (c.gradient) {
      double n = c.gradient(x).norm();
      if (n > 0.0) scale = n;
    }
    m = std::min(m, g / scale);
  }
  return m;
}

Vector Domain::reflect(const Vector& x, double floor) const {
  Vector y = x;
  for (Index i = 0; i < y.size(); ++i) {
    const double lo = lower_[i], hi = upper_[i];
    if (!(y[i] > lo)) {
      y[i] = 2.0 * lo - y[i] + floor * std::max(1.0, std::abs(lo));
      if (!(y[i] < hi)) y[i] = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0;
    } else if (!(y[i] < hi)) {
      y[i] = 2.0 * hi - y[i] - floor * std::max(1.0, std::abs(hi));
      if (!(y[i] > lo)) y[i] = std::isfinite(lo) ? 0.5 * (lo + hi) : hi - 1.0;
    }
  }
  for (const auto& c : constraints_) {
    double g = c.value(y);
    if (g > 0.0) continue;
    if (c.reflect) {
      y = c.reflect(y, floor);
    } else if (c.gradient) {
      Vector n = c.gradient(y);
      double nn = n.squaredNorm();
      if (nn == 0.0) continue;
      // Linearised: move so that the constraint value flips sign.
      y += (2.0 * std::abs(g) + floor) / nn * n;
    }
  }
  return y;
}

}  // namespace xmd
