#include <catch_amalgamated.hpp>

#include <random>

#include "fengame/diagnostics.hpp"
#include "fengame/problems.hpp"

using namespace fengame;

TEST_CASE("identity-spectrum quadratic minimizes at b") {
  Vector b(3);
  b << 0.4, -1.2, 2.0;
  ProblemInstance p = make_quadratic(3, {1.0, 1.0, 1.0}, b, 5);
  CHECK((*p.objective.minimizer - b).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(p.objective.smoothness_L == 1.0);
}

TEST_CASE("scalar quadratic ground truth") {
  Vector b(1);
  b[0] = 2.0;
  ProblemInstance p = make_quadratic(1, {2.0}, b, 1);
  CHECK((*p.objective.minimizer)[0] == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(*p.objective.min_value == Catch::Approx(-1.0).epsilon(1e-14));
  CHECK(p.objective.smoothness_L == 2.0);
  CHECK(p.objective.strong_convexity_mu == 2.0);
}

TEST_CASE("conditioned quadratic has a stationary analytic optimum") {
  ProblemInstance p = make_quadratic_kappa(50, 100.0, 7);
  CHECK(p.objective.smoothness_L == Catch::Approx(100.0).epsilon(1e-12));
  CHECK(p.objective.strong_convexity_mu == Catch::Approx(1.0).epsilon(1e-12));
  Vector g = p.objective.gradient(*p.objective.minimizer);
  CHECK(g.lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("quadratic gradient matches finite differences") {
  ProblemInstance p = make_quadratic_kappa(10, 50.0, 3);
  CHECK(max_gradient_fd_error(p.objective, 17) <= 1e-5);
}

TEST_CASE("quadratic smoothness and curvature hold on sampled pairs") {
  ProblemInstance p = make_quadratic_kappa(12, 80.0, 9);
  CHECK(max_smoothness_violation(p.objective, 23, 1000) <= 1e-9);
  CHECK(max_strong_convexity_violation(p.objective, 29, 1000) <= 1e-9);
}

TEST_CASE("quadratic conjugate is consistent") {
  ProblemInstance p = make_quadratic_kappa(9, 33.0, 13);
  CHECK(max_conjugate_inconsistency(p.objective, 31, 100) <= 1e-10);
}

TEST_CASE("log-sum-exp with symmetric anchors minimizes at the center") {
  std::vector<Vector> anchors;
  std::vector<double> offsets;
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e[i] = 1.0;
    anchors.push_back(e);
    anchors.push_back(-e);
    offsets.push_back(0.3);
    offsets.push_back(0.3);
  }
  ProblemInstance p = make_logsumexp(4, anchors, offsets, 1.0);
  CHECK(p.objective.gradient(Vector::Zero(4)).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("log-sum-exp gradient and smoothness bound") {
  ProblemInstance p = make_logsumexp_random(8, 30, 1.0, 19);
  CHECK(max_gradient_fd_error(p.objective, 37) <= 1e-5);
  CHECK(max_smoothness_violation(p.objective, 41, 1000) <= 1e-9);
}

TEST_CASE("composite scalar instances") {
  ProblemInstance lasso = make_lasso_1d(1.0);
  CHECK((*lasso.objective.minimizer)[0] == 2.0);
  CHECK(lasso.optimum_total() == Catch::Approx(0.5 + 2.0).epsilon(1e-15));

  // lambda = 0 reduces to the smooth optimum
  ProblemInstance smooth = make_lasso_1d(0.0);
  CHECK((*smooth.objective.minimizer)[0] == 3.0);

  // enormous lambda pins the optimum at zero
  ProblemInstance pinned = make_lasso_1d(100.0);
  CHECK((*pinned.objective.minimizer)[0] == 0.0);
}

TEST_CASE("diagonal composite optimum satisfies the stationarity conditions") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector q(6), b(6);
  for (int i = 0; i < 6; ++i) {
    q[i] = 0.5 + std::abs(normal(rng));
    b[i] = 2.0 * normal(rng);
  }
  const double lambda = 0.7;
  ProblemInstance p = make_l1_diag_quadratic(6, q, b, lambda);
  const Vector& xs = *p.objective.minimizer;
  Vector g = p.objective.gradient(xs);
  for (int i = 0; i < 6; ++i) {
    if (xs[i] != 0.0) {
      REQUIRE(std::abs(g[i] + lambda * (xs[i] > 0 ? 1.0 : -1.0)) <= 1e-10);
    } else {
      REQUIRE(std::abs(g[i]) <= lambda + 1e-10);
    }
  }
}

TEST_CASE("ball-constrained quadratic with interior optimum") {
  ProblemInstance p = make_ball_quadratic(6, 10.0, 1.0, /*bind=*/false, 4);
  CHECK(p.set.contains(*p.objective.minimizer, 1e-9));
  CHECK(p.objective.minimizer->norm() < 1.0);
  CHECK(p.objective.gradient(*p.objective.minimizer).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("ball-constrained quadratic with boundary optimum satisfies stationarity") {
  ProblemInstance p = make_ball_quadratic(6, 10.0, 1.0, /*bind=*/true, 4);
  const Vector& xs = *p.objective.minimizer;
  CHECK(xs.norm() == Catch::Approx(1.0).epsilon(1e-10));
  // gradient is antiparallel to the outward normal: g + lam x = 0 with lam >= 0
  Vector g = p.objective.gradient(xs);
  double lam = -g.dot(xs) / xs.squaredNorm();
  CHECK(lam >= 0.0);
  CHECK((g + lam * xs).lpNorm<Eigen::Infinity>() <= 1e-10);
  // and the reported value matches
  CHECK(p.objective.value(xs) == Catch::Approx(*p.objective.min_value).epsilon(1e-12));
}

TEST_CASE("reference computation closes in on the analytic optimum") {
  ProblemInstance p = make_quadratic_kappa(8, 20.0, 6);
  auto [x_ref, f_ref] = compute_reference(p.objective, p.set, nullptr, Vector::Zero(8), 2000);
  CHECK(f_ref - *p.objective.min_value <= 1e-8 * (1.0 + std::abs(*p.objective.min_value)));
  CHECK(f_ref >= *p.objective.min_value - 1e-12);
}

TEST_CASE("registry builds and validates") {
  std::map<std::string, std::string> params{{"name", "quadratic"}, {"dim", "5"}, {"kappa", "12"},
                                            {"seed", "3"}};
  ProblemInstance p = build_problem("quadratic", params);
  CHECK(p.objective.dim == 5);

  params["extra"] = "1";
  CHECK_THROWS_AS(build_problem("quadratic", params), ConfigError);
  CHECK_THROWS_AS(build_problem("nope", {}), ConfigError);

  ProblemInstance ball = build_problem("ball_quadratic", {{"name", "ball_quadratic"},
                                                          {"dim", "4"},
                                                          {"kappa", "10"},
                                                          {"radius", "1"},
                                                          {"bind", "outside"},
                                                          {"seed", "2"}});
  CHECK(ball.set.has_gauge());
  CHECK_THROWS_AS(build_problem("ball_quadratic", {{"name", "ball_quadratic"}, {"bind", "sideways"}}),
                  ConfigError);
}

TEST_CASE("problem construction is deterministic in the seed") {
  ProblemInstance a = make_quadratic_kappa(7, 15.0, 99);
  ProblemInstance b = make_quadratic_kappa(7, 15.0, 99);
  Vector probe = Vector::LinSpaced(7, -1.0, 1.0);
  CHECK(a.objective.value(probe) == b.objective.value(probe));
  CHECK((a.objective.gradient(probe) - b.objective.gradient(probe)).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((*a.objective.minimizer - *b.objective.minimizer).lpNorm<Eigen::Infinity>() == 0.0);
}
