#include <doctest.h>

#include <cmath>

#include "support/oracle.hpp"
#include "xmd/core/duality.hpp"
#include "xmd/core/generators.hpp"

using namespace xmd;
using oracle::v1;

namespace {

Generator neg_log() {
  Generator g("neg_log", 0.0, Domain::positive_orthant(1), [](const Eigen::VectorXd& t) { return -std::log(t[0]); },
              [](const Eigen::VectorXd& t) { return v1(-1.0 / t[0]); }, v1(1.0));
  return g;
}

/// Pairs where the log argument of the divergence is positive.
bool admissible(const Generator& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return 1.0 + g.lambda() * g.gradient(y).dot(x - y) > 1e-14;
}

}  // namespace

TEST_CASE("bregman_div: examples") {
  Generator sq = half_square_generator(0.0);
  CHECK(bregman_div(sq, v1(1.0), v1(0.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bregman_div(sq, v1(0.3), v1(0.3)) == 0.0);
  CHECK(bregman_div(neg_log(), v1(2.0), v1(1.0)) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
  CHECK(bregman_div(neg_log(), v1(2.0), v1(1.0)) == doctest::Approx(0.306853).epsilon(1e-6));
  CHECK_THROWS_AS(bregman_div(neg_log(), v1(-1.0), v1(1.0)), DomainError);
}

TEST_CASE("log_div: examples") {
  Generator g = neg_half_log_generator(1.0);
  const double e = std::exp(1.0);
  const double expected = -0.5 - std::log(1.0 - (e - 1.0) / 2.0);
  CHECK(log_div(g, v1(e), v1(1.0)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(log_div(g, v1(e), v1(1.0)) - 1.46) < 1e-3);
  CHECK(log_div(g, v1(e), v1(e)) == 0.0);
}

TEST_CASE("log_div: small lambda is within relative 1e-5 of the Bregman divergence") {
  Generator g = half_square_generator(1e-6);
  Generator b = half_square_generator(0.0);
  for (double x : oracle::linspace(-1.0, 1.0, 11))
    for (double y : oracle::linspace(-1.0, 1.0, 11)) {
      if (x == y) continue;
      const double bd = bregman_div(b, v1(x), v1(y));
      CHECK(std::abs(log_div(g, v1(x), v1(y)) - bd) <= 1e-5 * bd);
    }
}

TEST_CASE("log_div: error from the Bregman limit is first order in lambda") {
  Generator b = half_square_generator(0.0);
  for (const auto& pq : oracle::uniform_points(50, 2, -0.9, 0.9, 21)) {
    Eigen::VectorXd x = v1(pq[0]), y = v1(pq[1]);
    if (std::abs(pq[1] * (pq[0] - pq[1])) < 1e-3) continue;
    const double bd = bregman_div(b, x, y);
    const double e3 = std::abs(log_div(half_square_generator(1e-3), x, y) - bd);
    const double e4 = std::abs(log_div(half_square_generator(1e-4), x, y) - bd);
    CHECK(e3 / e4 >= 8.0);
    CHECK(e3 / e4 <= 12.0);
  }
}

TEST_CASE("log_div: nonpositive log argument is a domain error") {
  // phi = theta on (-inf, 1): 1 + <1, theta - theta'> <= 0 when theta - theta' <= -1.
  Generator g = linear_generator(1.0);
  CHECK_THROWS_AS(log_div(g, v1(-2.0), v1(0.5)), DomainError);
}

TEST_CASE("log_div: nonnegative with equality only on the diagonal") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.3, 0.3, 2.0;
  for (double lam : {-0.8, 0.5}) {
    Generator g = quadratic_generator(a, lam);
    auto pts = oracle::uniform_points(30, 2, -0.5, 0.5, 8);
    for (const auto& x : pts)
      for (const auto& y : pts) {
        if (!admissible(g, x, y)) continue;
        const double l = log_div(g, x, y);
        if (x == y) CHECK(l == 0.0);
        else CHECK(l > 0.0);
      }
  }
  for (double lam : {-1.5, 0.5, 2.0}) {
    for (const Generator& g : closed_form_examples(lam)) {
      for (double x : {0.05, 0.1, 0.3}) {
        for (double y : {0.07, 0.2, 0.31}) {
          Eigen::VectorXd tx = v1(g.name() == "linear" ? -x : x), ty = v1(g.name() == "linear" ? -y : y);
          if (admissible(g, tx, ty)) CHECK(log_div(g, tx, ty) >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("log_div_self_dual: agrees with the primal form") {
  Generator g = neg_half_log_generator(1.0);
  const double e = std::exp(1.0);
  Eigen::VectorXd eta1 = lambda_mirror(g, v1(1.0)).eta;
  CHECK(log_div_self_dual(g, v1(e), eta1) == doctest::Approx(log_div(g, v1(e), v1(1.0))).epsilon(1e-12));
  CHECK(std::abs(log_div_self_dual(g, v1(e), lambda_mirror(g, v1(e)).eta)) < 1e-14);
  for (double lam : {-1.0, 0.5, 2.0}) {
    for (const Generator& gg : closed_form_examples(lam)) {
      for (double x : {0.05, 0.2, 0.45})
        for (double y : {0.1, 0.3}) {
          Eigen::VectorXd tx = v1(gg.name() == "linear" ? -x : x), ty = v1(gg.name() == "linear" ? -y : y);
          if (!admissible(gg, tx, ty)) continue;
          Eigen::VectorXd ey = lambda_mirror(gg, ty).eta;
          CHECK(std::abs(log_div_self_dual(gg, tx, ey) - log_div(gg, tx, ty)) < 1e-10);
        }
    }
  }
}

TEST_CASE("log_div_self_dual: primal and dual divergences coincide with swapped arguments") {
  Eigen::MatrixXd a(2, 2);
  a << 1.2, -0.2, -0.2, 0.7;
  for (double lam : {-0.6, 0.8}) {
    Generator g = quadratic_generator(a, lam);
    Generator psi = dual_generator(g);
    auto pts = oracle::uniform_points(8, 2, -0.6, 0.6, 4);
    for (const auto& x : pts)
      for (const auto& y : pts) {
        Eigen::VectorXd ex = lambda_mirror(g, x).eta, ey = lambda_mirror(g, y).eta;
        CHECK(std::abs(log_div(g, x, y) - log_div(psi, ey, ex)) < 1e-10);
      }
  }
}

TEST_CASE("conformal Bregman identity with the factor at the first argument") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.4, 0.4, 1.3;
  std::vector<Generator> gens{quadratic_generator(a, -0.9), quadratic_generator(a, 0.6)};
  for (double lam : {-1.2, 0.7, 2.0})
    for (const Generator& g : closed_form_examples(lam)) gens.push_back(g);
  for (const Generator& g : gens) {
    const double lam = g.lambda();
    std::vector<Eigen::VectorXd> pts;
    if (g.dim() == 2) {
      pts = oracle::uniform_points(10, 2, -0.5, 0.5, 17);
    } else {
      for (double t : {0.1, 0.25, 0.4, 0.6}) pts.push_back(v1(g.name() == "linear" ? -t : t));
    }
    for (const auto& x : pts)
      for (const auto& y : pts) {
        if (!admissible(g, x, y)) continue;
        const double b = conformal_bregman_div(g, x, y);
        const double rhs = std::log1p(-lam * std::exp(-lam * g.value(x)) * b) / (-lam);
        CHECK(std::abs(log_div(g, x, y) - rhs) < 1e-10);
      }
  }
}
