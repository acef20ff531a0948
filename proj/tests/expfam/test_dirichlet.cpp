#include <doctest.h>

#include <cmath>

#include "support/oracle.hpp"
#include "xmd/core/duality.hpp"
#include "xmd/expfam/dirichlet_perturbation.hpp"
#include "xmd/expfam/escort.hpp"
#include "xmd/expfam/online.hpp"
#include "xmd/random/distributions.hpp"

using namespace xmd;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("Dirichlet coordinates") {
  SimplexPoint p(vec({0.5, 0.3, 0.2}));
  Vector th = dirichlet_theta(p, -0.3);
  CHECK(th[0] == doctest::Approx(0.5 / (-0.3 * 0.3)));
  CHECK(th[1] == doctest::Approx(0.5 / (-0.3 * 0.2)));
  Vector eta = dirichlet_eta(p);
  CHECK(eta[0] == doctest::Approx(0.6));
  CHECK(eta[1] == doctest::Approx(0.4));
  CHECK((dirichlet_p_from_eta(eta).weights() - p.weights()).norm() < 1e-15);
  CHECK((dirichlet_statistics(vec({0.4, 0.4, 0.2})) - vec({1.0, 0.5})).norm() < 1e-15);
  CounterRng rng(3, 0);
  for (int r = 0; r < 20; ++r) {
    SimplexPoint q(symmetric_dirichlet_sample(6, 1.0, rng));
    CHECK((dirichlet_theta(q, -0.7).array() < 0.0).all());
    CHECK((dirichlet_eta(q).array() > 0.0).all());
  }
}

TEST_CASE("Dirichlet potential: closed forms and regularity") {
  for (double lam : {-0.3, -1.0, -2.5}) {
    for (Index d : {1, 3, 10}) {
      Generator g = dirichlet_generator(d, lam);
      CounterRng rng(static_cast<std::uint64_t>(d), 1);
      for (int r = 0; r < 10; ++r) {
        SimplexPoint p(symmetric_dirichlet_sample(d + 1, 2.0, rng));
        Vector th = dirichlet_theta(p, lam);
        DualPair gp = lambda_mirror(g, th);
        CHECK((gp.eta - dirichlet_eta(p)).norm() < 1e-9 * (1 + gp.eta.norm()));
        CHECK((gp.eta - (*g.mirror_closed())(th)).norm() < 1e-9 * (1 + gp.eta.norm()));
        CHECK(gp.pi == doctest::Approx(double(d + 1)).epsilon(1e-12));
        CHECK((inverse_mirror_newton(g, gp.eta) - th).norm() < 1e-9 * (1 + th.norm()));
        RegularityReport rr = check_regularity(g, th);
        CHECK(rr.min_eigenvalue > 0.0);
        MetricAtPoint m = metric(g, th);
        CHECK(oracle::rel_frobenius(metric_conformal_form(g, th), m.g) < 1e-8);
      }
    }
  }
}

TEST_CASE("Dirichlet online update: explicit factor") {
  const double lam = -0.3;
  LambdaExpFamily fam = dirichlet_family(2, lam);
  SimplexPoint p(vec({0.5, 0.3, 0.2}));
  Vector q = vec({0.4, 0.4, 0.2});
  Vector y = dirichlet_statistics(q);
  OnlineState s = make_online_state(fam, dirichlet_theta(p, lam));
  const double factor = 3.0 / (1.0 + (0.5 / 0.3) * (0.4 / 0.4) + (0.5 / 0.2) * (0.2 / 0.4));
  CHECK(online_step_factor(fam, s.theta, s.eta, y) == doctest::Approx(factor).epsilon(1e-14));
  OnlineState n = online_update(fam, s, y, 0.5);
  CHECK((n.eta - (s.eta + 0.5 * factor * (y - s.eta))).norm() < 1e-14);
  CHECK((n.eta - y).norm() < (s.eta - y).norm());
  CHECK((n.theta - (*fam.potential.inverse_mirror_closed())(n.eta)).norm() < 1e-9);
  CHECK(n.k == 2);
}

TEST_CASE("Dirichlet online update equals the natural-gradient step on the log-loss") {
  for (double lam : {-0.3, -0.7}) {
    LambdaExpFamily fam = dirichlet_family(4, lam);
    CounterRng rng(21, 0);
    SimplexPoint p(symmetric_dirichlet_sample(5, 2.0, rng));
    DirichletPerturbModel model{p, -lam};
    OnlineState s = make_online_state(fam, dirichlet_theta(SimplexPoint::barycenter(5), lam));
    for (int k = 1; k <= 50; ++k) {
      Vector y = dirichlet_statistics(dirichlet_perturb_sample(model, rng).weights());
      const double delta = 0.3 / k;
      Vector generic = natural_gradient_step(fam, s.theta, s.eta, log_loss(fam, s.theta, y).gradient, delta);
      Vector raw = online_raw_step(fam, s.theta, s.eta, y, delta);
      CHECK((generic - raw).norm() < 1e-10 * (1 + raw.norm()));
      s = online_update(fam, s, y, delta);
      CHECK((s.theta - fam.inverse_mirror(s.eta)).norm() < 1e-9 * (1 + s.theta.norm()));
    }
  }
}

TEST_CASE("Dirichlet online estimation is independent of lambda") {
  const Index d = 8;
  CounterRng rng(4, 0);
  SimplexPoint p(symmetric_dirichlet_sample(d + 1, 1.0, rng));
  DirichletPerturbModel model{p, 0.3};
  std::vector<Vector> ys;
  for (int k = 0; k < 2000; ++k) ys.push_back(dirichlet_statistics(dirichlet_perturb_sample(model, rng).weights()));
  std::vector<std::vector<Vector>> runs;
  for (double lam : {-0.3, -0.7}) {
    LambdaExpFamily fam = dirichlet_family(d, lam);
    OnlineState s = make_online_state(fam, dirichlet_theta(SimplexPoint::barycenter(d + 1), lam));
    std::vector<Vector> traj;
    for (const auto& y : ys) {
      s = online_update(fam, s, y);
      traj.push_back(dirichlet_p_from_eta(s.eta).weights());
    }
    runs.push_back(traj);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) worst = std::max(worst, (runs[0][k] - runs[1][k]).lpNorm<Eigen::Infinity>());
  CHECK(worst < 1e-12);
}

TEST_CASE("Dirichlet online update: reflection into the orthant and skipped steps") {
  LambdaExpFamily fam = dirichlet_family(2, -0.5);
  OnlineState s = make_online_state(fam, dirichlet_theta(SimplexPoint(vec({0.2, 0.4, 0.4})), -0.5));
  // A statistic far below eta with a large step overshoots zero.
  Vector y = vec({1e-6, 1e-6});
  OnlineState n = online_update(fam, s, y, 3.0);
  CHECK(n.reflections == 1);
  CHECK((n.eta.array() > 0.0).all());
  CHECK((n.theta - fam.inverse_mirror(n.eta)).norm() < 1e-9 * (1 + n.theta.norm()));

  LambdaExpFamily broken = fam;
  broken.potential = fam.potential.with_inverse_mirror([](const Vector&) -> Vector { throw DomainError("no"); });
  OnlineState b = online_update(broken, s, vec({1.5, 1.0}), 0.5);
  CHECK(b.skipped == 1);
  CHECK(b.k == s.k + 1);
  CHECK(b.eta == s.eta);
}

TEST_CASE("Dirichlet online update: fixed points") {
  LambdaExpFamily fam = dirichlet_family(3, -0.3);
  OnlineState s = make_online_state(fam, dirichlet_theta(SimplexPoint(vec({0.1, 0.2, 0.3, 0.4})), -0.3));
  OnlineState n = online_update(fam, s, s.eta, 0.9);
  CHECK((n.eta - s.eta).norm() == 0.0);
}

TEST_CASE("Dirichlet perturbation sampler") {
  SUBCASE("small noise concentrates at p") {
    SimplexPoint p(vec({0.1, 0.3, 0.6}));
    double prev = 1e9;
    for (double sigma : {1.0, 0.1, 0.01, 0.001, 1e-5}) {
      CounterRng rng(8, 0);
      double acc = 0.0;
      for (int i = 0; i < 2000; ++i) acc += (dirichlet_perturb_sample({p, sigma}, rng).weights() - p.weights()).lpNorm<1>();
      acc /= 2000;
      CHECK(acc < prev);
      prev = acc;
    }
    CHECK(prev < 0.01);
  }
  SUBCASE("barycenter parameter returns the noise itself") {
    CounterRng a(9, 0), b(9, 0);
    const double sigma = 0.4;
    for (int i = 0; i < 50; ++i) {
      SimplexPoint q = dirichlet_perturb_sample({SimplexPoint::barycenter(4), sigma}, a);
      Vector dn = symmetric_dirichlet_sample(4, 1.0 / (sigma * 4.0), b);
      CHECK((q.weights() - dn).norm() < 1e-14);
    }
  }
  SUBCASE("escort average of the statistics recovers eta") {
    const double lam = -0.3;
    LambdaExpFamily fam = dirichlet_family(3, lam);
    SimplexPoint p(vec({0.4, 0.1, 0.2, 0.3}));
    CounterRng rng(10, 0);
    Vector est = escort_expectation_mc(fam, dirichlet_theta(p, lam), 1000000, rng);
    Vector eta = dirichlet_eta(p);
    CHECK(((est - eta).array().abs() / eta.array()).maxCoeff() < 0.05);
  }
}

TEST_CASE("dual log distance") {
  CHECK(dual_log_distance(vec({1.0, 2.0}), vec({1.0, 2.0})) == 0.0);
  CHECK(dual_log_distance(vec({std::exp(1.0), 1.0}), vec({1.0, std::exp(-1.0)})) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(dual_log_distance(vec({-1.0}), vec({1.0})), DomainError);
}
