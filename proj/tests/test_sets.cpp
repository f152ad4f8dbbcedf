#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fengame/sets.hpp"

using namespace fengame;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

// dense boundary sample of a 2-D lp sphere of radius r
std::vector<Vector> lp_boundary_grid(double p, double r, int n) {
  std::vector<Vector> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n;
    Vector dir = vec2(std::cos(ang), std::sin(ang));
    double pn = std::pow(std::pow(std::abs(dir[0]), p) + std::pow(std::abs(dir[1]), p), 1.0 / p);
    pts.push_back((r / pn) * dir);
  }
  return pts;
}

}  // namespace

TEST_CASE("l2 ball gauge and membership") {
  FeasibleSet ball = make_ball_set(2, 2.0, 5.0);
  CHECK(ball.gauge(vec2(3, 4)) == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(ball.contains(vec2(3, 4), 1e-9));
  CHECK_FALSE(ball.contains(vec2(4, 4), 1e-9));
}

TEST_CASE("gauge is positively homogeneous") {
  for (double p : {1.5, 2.0}) {
    FeasibleSet ball = make_ball_set(2, p, 2.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      Vector x = vec2(normal(rng), normal(rng));
      for (double c : {0.0, 0.3, 1.0, 7.5}) {
        REQUIRE(ball.gauge(c * x) == Catch::Approx(c * ball.gauge(x)).margin(1e-12));
      }
    }
  }
}

TEST_CASE("gauge at most one inside the set") {
  for (double p : {1.3, 1.5, 2.0}) {
    FeasibleSet ball = make_ball_set(3, p, 1.7);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      Vector x(3);
      for (int i = 0; i < 3; ++i) x[i] = normal(rng);
      Vector inside = ball.bregman_project(Vector::Zero(3), -x, 1.0);
      REQUIRE(ball.gauge(inside) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("l2 linear oracle closed form") {
  FeasibleSet ball = make_ball_set(2, 2.0, 1.0);
  Vector v = ball.linear_oracle(vec2(0, 1));
  CHECK(v[0] == 0.0);
  CHECK(v[1] == -1.0);
}

TEST_CASE("linear oracle beats sampled feasible points") {
  for (double p : {1.5, 2.0}) {
    FeasibleSet ball = make_ball_set(2, p, 1.0);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 25; ++k) {
      Vector g = vec2(normal(rng), normal(rng));
      Vector v = ball.linear_oracle(g);
      REQUIRE(ball.contains(v, 1e-9));
      for (const Vector& x : lp_boundary_grid(p, 1.0, 720)) {
        REQUIRE(v.dot(g) <= x.dot(g) + 1e-9);
      }
    }
  }
}

TEST_CASE("p=1.5 oracle against a dense boundary search") {
  FeasibleSet ball = make_ball_set(2, 1.5, 2.0);
  Vector g = vec2(0.8, -0.3);
  Vector v = ball.linear_oracle(g);
  double best = 1e300;
  for (const Vector& x : lp_boundary_grid(1.5, 2.0, 20000)) best = std::min(best, x.dot(g));
  CHECK(v.dot(g) <= best + 1e-6);
  CHECK(ball.gauge(v) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("euclidean projection onto the l2 ball") {
  FeasibleSet ball = make_ball_set(2, 2.0, 1.0);
  Vector inside = ball.bregman_project(vec2(0.1, 0.1), Vector::Zero(2), 1.0);
  CHECK((inside - vec2(0.1, 0.1)).norm() == 0.0);
  Vector clipped = ball.bregman_project(vec2(3, 4), Vector::Zero(2), 1.0);
  CHECK(clipped.norm() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(clipped[0] == Catch::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("lp projection lands in the set and is closest among samples") {
  const double p = 1.5, r = 1.0;
  FeasibleSet ball = make_ball_set(2, p, r);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Vector v = vec2(2.0 * normal(rng), 2.0 * normal(rng));
    Vector proj = ball.bregman_project(v, Vector::Zero(2), 1.0);
    REQUIRE(ball.contains(proj, 1e-9));
    double d = (v - proj).norm();
    for (const Vector& x : lp_boundary_grid(p, r, 3000)) {
      REQUIRE(d <= (v - x).norm() + 1e-7);
    }
  }
}

TEST_CASE("box set clamps") {
  Vector lo(1), hi(1);
  lo[0] = 0.0;
  hi[0] = std::numeric_limits<double>::infinity();
  FeasibleSet halfline = make_box(lo, hi);
  Vector c(1), g(1);
  c[0] = 0.1;
  g[0] = 0.5;
  Vector out = halfline.bregman_project(c, g, 1.0);
  CHECK(out[0] == 0.0);
  CHECK(halfline.contains(out, 1e-12));
}

TEST_CASE("simplex multiplicative step stays on the simplex") {
  FeasibleSet simplex = make_simplex(3);
  Vector c = Vector::Constant(3, 1.0 / 3.0);
  Vector g(3);
  g << 1.0, 0.0, 1.0;
  Vector out = simplex.bregman_project(c, g, 0.7);
  CHECK(simplex.contains(out, 1e-12));
  CHECK(out.sum() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(out[1] > out[0]);
}

TEST_CASE("simplex linear oracle picks a vertex") {
  FeasibleSet simplex = make_simplex(4);
  Vector g(4);
  g << 0.3, -0.2, 0.9, -0.7;
  Vector v = simplex.linear_oracle(g);
  CHECK(v[3] == 1.0);
  CHECK(v.sum() == 1.0);
}

TEST_CASE("ball constructor rejects bad parameters") {
  CHECK_THROWS_AS(make_ball_set(2, 1.0, 1.0), Error);
  CHECK_THROWS_AS(make_ball_set(2, 2.5, 1.0), Error);
  CHECK_THROWS_AS(make_ball_set(2, 2.0, 0.0), Error);
}
