#include <doctest.h>

#include <cmath>

#include "support/oracle.hpp"
#include "xmd/core/duality.hpp"

using namespace xmd;
using oracle::v1;
using oracle::v2;

TEST_CASE("log_cost: unit arguments at lambda one") {
  CHECK(log_cost(v1(1.0), v1(1.0), 1.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(log_cost(v1(1.0), v1(1.0), 1.0) == doctest::Approx(-0.693147).epsilon(1e-6));
}

TEST_CASE("log_cost: orthogonal arguments vanish for any lambda") {
  for (double lam : {-3.0, -0.5, 1e-13, 0.7, 4.0}) CHECK(log_cost(v2(1.0, 0.0), v2(0.0, 5.0), lam) == 0.0);
}

TEST_CASE("log_cost: small lambda approaches the Bregman cost") {
  const double c = log_cost(v1(1.0), v1(1.0), 1e-8);
  CHECK(std::abs(c - (-1.0)) < 1e-7);
  // Taylor: -(s - lambda s^2 / 2)
  CHECK(std::abs(c - (-(1.0 - 0.5e-8))) < 1e-14);
}

TEST_CASE("log_cost: exact branch below cutoff") {
  Eigen::VectorXd x = v2(0.3, -1.2), y = v2(2.0, 0.25);
  CHECK(log_cost(x, y, 5e-13) == -x.dot(y));
  CHECK(log_cost(x, y, 0.0) == -x.dot(y));
}

TEST_CASE("log_cost: nonpositive log argument is a domain error") {
  CHECK_THROWS_AS(log_cost(v1(1.0), v1(1.0), -1.0), DomainError);
  CHECK_THROWS_AS(log_cost(v1(2.0), v1(1.0), -1.0), DomainError);
  // 1 + lambda s = 1e-15 is below the guard
  CHECK_THROWS_AS(log_cost(v1(1.0), v1(1.0 - 1e-15), -1.0), DomainError);
  CHECK_NOTHROW(log_cost(v1(1.0), v1(0.999), -1.0));
}

TEST_CASE("log_cost: dimension mismatch") { CHECK_THROWS_AS(log_cost(v1(1.0), v2(1, 1), 1.0), InvalidArgument); }
