#include <catch_amalgamated.hpp>

#include <random>

#include "fengame/core.hpp"
#include "fengame/problems.hpp"
#include "fengame/trace.hpp"

using namespace fengame;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v[0] = a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

Objective half_squared_norm_objective(int dim) {
  Objective f;
  f.dim = dim;
  f.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  f.gradient = [](const Vector& x) { return x; };
  f.smoothness_L = 1.0;
  f.strong_convexity_mu = 1.0;
  f.analytic_conjugate = [](const Vector& y) { return 0.5 * y.squaredNorm(); };
  f.minimizer = Vector::Zero(dim);
  f.min_value = 0.0;
  return f;
}

}  // namespace

TEST_CASE("payoff of the self-conjugate quadratic") {
  Objective f = half_squared_norm_objective(2);
  CHECK(payoff(f, vec2(1, 0), vec2(1, 0)) == 0.5);
}

TEST_CASE("payoff at the gradient recovers the function value") {
  ProblemInstance p = make_quadratic_kappa(6, 10.0, 3);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Vector x(6);
    for (int i = 0; i < 6; ++i) x[i] = normal(rng);
    Vector y = p.objective.gradient(x);
    CHECK(payoff(p.objective, x, y) == Catch::Approx(p.objective.value(x)).epsilon(1e-12));
    CHECK(payoff(p.objective, x, y, x) == Catch::Approx(p.objective.value(x)).epsilon(1e-12));
  }
}

TEST_CASE("payoff scalar arithmetic") {
  Objective f = half_squared_norm_objective(1);
  CHECK(payoff(f, vec1(2), vec1(1)) == 1.5);
}

TEST_CASE("payoff without conjugate or witness is an error") {
  Objective f = half_squared_norm_objective(1);
  f.analytic_conjugate = nullptr;
  CHECK_THROWS_AS(payoff(f, vec1(1), vec1(1)), ConjugateUnavailable);
  CHECK(payoff(f, vec1(2), vec1(1), vec1(1)) == 1.5);  // witness route still works
}

TEST_CASE("conjugate value at a gradient point, scalar quadratic") {
  Objective f = half_squared_norm_objective(1);
  CHECK(conjugate_at_gradient(f, vec1(3)) == 4.5);
}

TEST_CASE("conjugate value at a gradient point, diagonal quadratic") {
  Objective f;
  f.dim = 2;
  f.value = [](const Vector& x) { return 0.5 * (x[0] * x[0] + 2.0 * x[1] * x[1]); };
  f.gradient = [](const Vector& x) { return vec2(x[0], 2.0 * x[1]); };
  CHECK(conjugate_at_gradient(f, vec2(1, 1)) == Catch::Approx(1.5).epsilon(1e-15));
  // cross-check against the analytic conjugate y' Q^{-1} y / 2 at (1, 2)
  double analytic = 0.5 * (1.0 * 1.0 + 2.0 * 2.0 / 2.0);
  CHECK(conjugate_at_gradient(f, vec2(1, 1)) == Catch::Approx(analytic).epsilon(1e-15));
}

TEST_CASE("conjugate value at a gradient point, log-sum-exp at the origin") {
  std::vector<Vector> anchors = {vec2(1, 0), vec2(0, 1)};
  ProblemInstance p = make_logsumexp(2, anchors, {0.0, 0.0}, 1.0);
  CHECK(conjugate_at_gradient(p.objective, vec2(0, 0)) ==
        Catch::Approx(-std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("conjugate agreement at gradient points over random probes") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    ProblemInstance p = make_quadratic_kappa(8, 25.0, seed);
    std::mt19937_64 rng(seed * 7 + 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      Vector w(8);
      for (int i = 0; i < 8; ++i) w[i] = normal(rng);
      double via_witness = conjugate_at_gradient(p.objective, w);
      double analytic = p.objective.analytic_conjugate(p.objective.gradient(w));
      REQUIRE(std::abs(via_witness - analytic) <= 1e-10 * (1.0 + std::abs(analytic)));
    }
  }
}

TEST_CASE("payoff is maximized at the gradient") {
  ProblemInstance p = make_quadratic_kappa(5, 12.0, 9);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Vector x(5), noise(5);
    for (int i = 0; i < 5; ++i) {
      x[i] = normal(rng);
      noise[i] = 0.3 * normal(rng);
    }
    Vector y_star = p.objective.gradient(x);
    double at_grad = payoff(p.objective, x, y_star);
    double perturbed = payoff(p.objective, x, Vector(y_star + noise));
    REQUIRE(at_grad >= perturbed - 1e-9);
  }
}

TEST_CASE("averaging a constant history stays put") {
  Vector c = vec2(0.3, -0.7);
  double A_prev = 0.0;
  Vector xbar = c;
  for (int t = 1; t <= 10; ++t) {
    double alpha = t;
    Vector xtilde = hint_shifted_average(A_prev, xbar, alpha, c);
    xbar = weighted_average_step(A_prev, xbar, alpha, c);
    A_prev += alpha;
    REQUIRE((xtilde - c).lpNorm<Eigen::Infinity>() <= 1e-15);
    REQUIRE((xbar - c).lpNorm<Eigen::Infinity>() <= 1e-15);
  }
}

TEST_CASE("two-round fixture average") {
  // alpha_t = t, x1 = 0.75, x2 = 0.375 -> xbar2 = (0.75 + 2*0.375)/3 = 0.5
  Vector xbar1 = vec1(0.75);
  Vector xbar2 = weighted_average_step(1.0, xbar1, 2.0, vec1(0.375));
  CHECK(xbar2[0] == 0.5);
}

TEST_CASE("hint-shifted average collapses to the start point at t=1") {
  Vector x0 = vec2(2.0, -1.0);
  Vector xtilde1 = hint_shifted_average(0.0, x0, 1.0, x0);
  CHECK((xtilde1 - x0).norm() == 0.0);
}

TEST_CASE("trace-level averaging step") {
  GameTrace tr;
  tr.x0 = vec1(1.0);
  WeightSchedule sched = WeightSchedule::linear();
  auto [xbar1, xtilde2] = update_averages(tr, 1, vec1(0.75), sched);
  CHECK(xbar1[0] == 0.75);
  CHECK(xtilde2[0] == Catch::Approx((2.0 * 0.75 + 1.0 * 0.75) / 3.0).epsilon(1e-15));

  Round r1;
  r1.t = 1;
  r1.alpha = 1.0;
  r1.A = 1.0;
  r1.x = vec1(0.75);
  r1.xbar = xbar1;
  tr.rounds.push_back(r1);
  auto [xbar2, xtilde3] = update_averages(tr, 2, vec1(0.375), sched);
  CHECK(xbar2[0] == 0.5);
  CHECK(xtilde3[0] == Catch::Approx((3.0 * 0.375 + 3.0 * 0.5) / 6.0).epsilon(1e-15));
}

TEST_CASE("euclidean divergence facts") {
  BregmanGeometry g = euclidean_geometry();
  Vector c = vec2(1, 2), x = vec2(-1, 0.5);
  CHECK(g.divergence(c, c) == 0.0);
  CHECK(g.divergence(c, x) == Catch::Approx(0.5 * (x - c).squaredNorm()).epsilon(1e-15));
  CHECK(g.divergence(c, x) >= 0.5 * (x - c).squaredNorm() - 1e-15);
}

TEST_CASE("entropy divergence dominates half squared distance on the simplex") {
  BregmanGeometry g = entropy_geometry();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (int k = 0; k < 200; ++k) {
    Vector c(3), x(3);
    for (int i = 0; i < 3; ++i) {
      c[i] = unif(rng);
      x[i] = unif(rng);
    }
    c /= c.sum();
    x /= x.sum();
    REQUIRE(g.divergence(c, x) >= 0.5 * (x - c).squaredNorm() - 1e-12);
    REQUIRE(g.divergence(c, c) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(g.divergence(c, x) >= -1e-14);
  }
}
