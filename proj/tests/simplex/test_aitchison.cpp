#include <doctest.h>

#include <cmath>

#include "support/oracle.hpp"
#include "xmd/core/duality.hpp"
#include "xmd/random/distributions.hpp"
#include "xmd/simplex/simplex_point.hpp"

using namespace xmd;

namespace {

SimplexPoint sp(std::initializer_list<double> w) {
  Vector v(static_cast<Index>(w.size()));
  Index i = 0;
  for (double x : w) v[i++] = x;
  return SimplexPoint(v);
}

double maxdiff(const SimplexPoint& a, const SimplexPoint& b) {
  return (a.weights() - b.weights()).lpNorm<Eigen::Infinity>();
}

std::vector<SimplexPoint> random_points(int count, Index n, std::uint64_t stream) {
  CounterRng r(77, stream);
  std::vector<SimplexPoint> out;
  for (int i = 0; i < count; ++i) out.emplace_back(symmetric_dirichlet_sample(n, 1.5, r));
  return out;
}

}  // namespace

TEST_CASE("SimplexPoint: validation and normalisation") {
  CHECK_THROWS_AS(sp({0.5, 0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(sp({0.7, 0.7}), DomainError);
  CHECK_THROWS_AS(SimplexPoint(Vector::Ones(1)), InvalidArgument);
  SimplexPoint p = SimplexPoint::normalize(Vector::Constant(4, 3.0));
  CHECK(maxdiff(p, SimplexPoint::barycenter(4)) < 1e-16);
  Vector lw(3);
  lw << 0.0, -800.0, -1e6;
  SimplexPoint q = SimplexPoint::from_log(lw);
  CHECK(q.min_weight() >= kWeightFloor);
  CHECK(std::abs(q.weights().sum() - 1.0) < 1e-12);
}

TEST_CASE("perturb: examples") {
  SimplexPoint p = sp({0.5, 0.3, 0.2}), q = sp({0.2, 0.3, 0.5});
  SimplexPoint r = perturb(p, q);
  CHECK(r[0] == doctest::Approx(0.10 / 0.29).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.09 / 0.29).epsilon(1e-14));
  CHECK(r[2] == doctest::Approx(0.10 / 0.29).epsilon(1e-14));
  CHECK(maxdiff(perturb(SimplexPoint::barycenter(3), q), q) < 1e-15);
  CHECK(maxdiff(perturb(p, inverse(p)), SimplexPoint::barycenter(3)) < 1e-15);
}

TEST_CASE("power: examples") {
  SimplexPoint p = sp({1.0 / 3.0, 2.0 / 3.0});
  SimplexPoint r = power(2.0, p);
  CHECK(r[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(maxdiff(power(1.0, p), p) < 1e-15);
  CHECK(maxdiff(power(0.0, p), SimplexPoint::barycenter(2)) == 0.0);
  CHECK(maxdiff(power(3.7, SimplexPoint::barycenter(5)), SimplexPoint::barycenter(5)) < 1e-16);
}

TEST_CASE("Aitchison vector space laws on random triples") {
  auto pts = random_points(60, 6, 1);
  for (int k = 0; k + 2 < 60; k += 3) {
    const SimplexPoint &a = pts[k], &b = pts[k + 1], &c = pts[k + 2];
    CHECK(maxdiff(perturb(a, b), perturb(b, a)) < 1e-12);
    CHECK(maxdiff(perturb(perturb(a, b), c), perturb(a, perturb(b, c))) < 1e-12);
    CHECK(maxdiff(perturb(a, inverse(a)), SimplexPoint::barycenter(6)) < 1e-12);
    const double al = 0.3 + 0.1 * k, be = -1.2 + 0.05 * k;
    CHECK(maxdiff(power(al + be, a), perturb(power(al, a), power(be, a))) < 1e-12);
    CHECK(maxdiff(power(al, perturb(a, b)), perturb(power(al, a), power(al, b))) < 1e-12);
    CHECK(maxdiff(power(al, power(be, a)), power(al * be, a)) < 1e-12);
    for (const SimplexPoint& r : {perturb(a, b), power(al, c), inverse(b)}) {
      CHECK(std::abs(r.weights().sum() - 1.0) < 1e-12);
      CHECK(r.min_weight() > 0.0);
    }
  }
}

TEST_CASE("dirichlet_cost: examples and AM-GM") {
  SimplexPoint p = sp({0.5, 0.5}), q = sp({0.75, 0.25});
  CHECK(dirichlet_cost(p, q) == doctest::Approx(-0.5 * std::log(0.75)).epsilon(1e-14));
  CHECK(dirichlet_cost(p, q) == doctest::Approx(0.143841).epsilon(1e-6));
  auto pts = random_points(20, 5, 2);
  for (const auto& a : pts) {
    CHECK(dirichlet_cost(a, a) == 0.0);
    for (const auto& b : pts)
      if (&a != &b) CHECK(dirichlet_cost(a, b) > 0.0);
  }
}

TEST_CASE("dirichlet_cost equals the lambda = -1 log divergence in chart coordinates") {
  const Index n = 5, d = n - 1;
  const double nn = static_cast<double>(n);
  auto last = [](const Vector& x) { return 1.0 - x.sum(); };
  Domain chart = Domain::positive_orthant(d).with_constraint(
      {"last_weight", last, [d](const Vector&) { return Vector(-Vector::Ones(d)); }, {}});
  Generator phi(
      "neg_mean_log", -1.0, chart,
      [&](const Vector& x) { return -(x.array().log().sum() + std::log(last(x))) / nn; },
      [&](const Vector& x) { return Vector((-(1.0 / x.array()) + 1.0 / last(x)) / nn); },
      Vector::Constant(d, 1.0 / nn));
  auto pts = random_points(12, n, 3);
  for (const auto& p : pts)
    for (const auto& q : pts) {
      Vector xp = p.weights().head(d), xq = q.weights().head(d);
      CHECK(std::abs(dirichlet_cost(p, q) - log_div(phi, xq, xp)) < 1e-12);
    }
}

TEST_CASE("dirichlet_cost_gradient: matches differences") {
  auto pts = random_points(10, 4, 4);
  const SimplexPoint& target = pts[0];
  for (int k = 1; k < 10; ++k) {
    const SimplexPoint& p = pts[k];
    auto f = [&](const Vector& w) {
      // Extend off the simplex with the same formula on unnormalised weights.
      Vector r = target.log_weights() - w.array().log().matrix();
      return std::log(r.array().exp().mean()) - r.mean();
    };
    Vector fd = oracle::gradient(f, p.weights(), 1e-4);
    CHECK((fd - dirichlet_cost_gradient(p, target)).lpNorm<Eigen::Infinity>() < 1e-6 * (1.0 + fd.norm()));
  }
}
