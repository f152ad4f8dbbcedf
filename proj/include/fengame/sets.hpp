#ifndef FENGAME_SETS_HPP_
#define FENGAME_SETS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "fengame/core.hpp"

namespace fengame {

/// Constraint-set oracle bundle. `bregman_project(c, g, step)` returns
///   argmin_{x in K} step * <x, g> + V_c(x)
/// for the divergence this set was built with. `linear_oracle` and `gauge`
/// are present only where the set supports them; `gauge_sq_beta` is the
/// strong-convexity modulus of gauge(.)^2 w.r.t. the L2 norm (0 if unknown).
struct FeasibleSet {
  int dim = 0;
  std::function<bool(const Vector&, double)> contains;  // (x, tol)
  std::function<Vector(const Vector&, const Vector&, double)> bregman_project;
  std::function<Vector(const Vector&)> linear_oracle;  // empty if unsupported
  std::function<double(const Vector&)> gauge;          // empty if unsupported
  std::optional<double> divergence_bound_D;
  double gauge_sq_beta = 0.0;

  bool has_linear_oracle() const { return static_cast<bool>(linear_oracle); }
  bool has_gauge() const { return static_cast<bool>(gauge); }
};

inline FeasibleSet make_unconstrained(int dim) {
  FeasibleSet s;
  s.dim = dim;
  s.contains = [](const Vector&, double) { return true; };
  s.bregman_project = [](const Vector& c, const Vector& g, double step) -> Vector {
    return c - step * g;
  };
  return s;
}

/// Axis-aligned box, Euclidean divergence. Use +/-inf bounds for halflines.
inline FeasibleSet make_box(const Vector& lo, const Vector& hi) {
  FeasibleSet s;
  s.dim = static_cast<int>(lo.size());
  s.contains = [lo, hi](const Vector& x, double tol) {
    for (int i = 0; i < x.size(); ++i) {
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
    }
    return true;
  };
  s.bregman_project = [lo, hi](const Vector& c, const Vector& g, double step) {
    Vector x = c - step * g;
    for (int i = 0; i < x.size(); ++i) x[i] = std::min(std::max(x[i], lo[i]), hi[i]);
    return x;
  };
  return s;
}

namespace detail {

// Euclidean projection onto { ||x||_p <= r } for p in (1, 2). The KKT system
// decouples per coordinate given the multiplier: u + lam*p*u^(p-1) = |v_i|
// with u in [0, |v_i|], monotone in both u and lam, so nested bisection on
// the dual scale converges unconditionally.
inline Vector project_lp_ball(const Vector& v, double p, double r) {
  const int max_iter = 200;
  const double tol = 1e-12;
  auto coord = [&](double av, double lam) {
    if (av <= 0.0) return 0.0;
    double lo = 0.0, hi = av;
    for (int k = 0; k < max_iter; ++k) {
      double u = 0.5 * (lo + hi);
      double val = u + lam * p * std::pow(u, p - 1.0) - av;
      (val > 0.0 ? hi : lo) = u;
      if (hi - lo < tol * (1.0 + av)) break;
    }
    return 0.5 * (lo + hi);
  };
  auto pnorm_at = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(coord(std::abs(v[i]), lam), p);
    return std::pow(s, 1.0 / p);
  };
  double lam_lo = 0.0, lam_hi = 1.0;
  while (pnorm_at(lam_hi) > r) {
    lam_hi *= 2.0;
    if (lam_hi > 1e18) throw ProjectionFailure("lp-ball projection: multiplier bracket diverged");
  }
  for (int k = 0; k < max_iter; ++k) {
    double lam = 0.5 * (lam_lo + lam_hi);
    (pnorm_at(lam) > r ? lam_lo : lam_hi) = lam;
    if (lam_hi - lam_lo < tol * (1.0 + lam_hi)) break;
  }
  const double lam = 0.5 * (lam_lo + lam_hi);
  Vector x(v.size());
  for (int i = 0; i < v.size(); ++i) {
    double u = coord(std::abs(v[i]), lam);
    x[i] = v[i] >= 0.0 ? u : -u;
  }
  return x;
}

}  // namespace detail

/// lp ball of the given radius centered at the origin, p in (1, 2].
/// Gauge is ||x||_p / r; the linear oracle is the dual-norm extreme point.
inline FeasibleSet make_ball_set(int dim, double p, double radius) {
  if (!(p > 1.0 && p <= 2.0)) throw Error("make_ball_set: p must lie in (1, 2]");
  if (!(radius > 0.0)) throw Error("make_ball_set: radius must be positive");
  FeasibleSet s;
  s.dim = dim;
  const double r = radius;
  auto pnorm = [p](const Vector& x) {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), p);
    return std::pow(acc, 1.0 / p);
  };
  s.contains = [pnorm, r](const Vector& x, double tol) { return pnorm(x) <= r + tol; };
  s.gauge = [pnorm, r](const Vector& x) { return pnorm(x) / r; };
  // 0.5*gauge^2 has modulus (p-1)/r^2; the regularizer used downstream is
  // gauge^2, hence 2(p-1)/r^2.
  s.gauge_sq_beta = 2.0 * (p - 1.0) / (r * r);
  if (p == 2.0) {
    s.bregman_project = [r](const Vector& c, const Vector& g, double step) -> Vector {
      Vector v = c - step * g;
      double n = v.norm();
      if (n <= r) return v;
      return (r / n) * v;
    };
    s.linear_oracle = [r, dim](const Vector& g) -> Vector {
      double n = g.norm();
      if (n == 0.0) return Vector::Zero(dim);
      return (-r / n) * g;
    };
  } else {
    s.bregman_project = [r, p, pnorm](const Vector& c, const Vector& g, double step) -> Vector {
      Vector v = c - step * g;
      if (pnorm(v) <= r) return v;
      return detail::project_lp_ball(v, p, r);
    };
    const double q = p / (p - 1.0);  // dual exponent
    s.linear_oracle = [r, q, dim](const Vector& g) -> Vector {
      double qn = 0.0;
      for (int i = 0; i < g.size(); ++i) qn += std::pow(std::abs(g[i]), q);
      qn = std::pow(qn, 1.0 / q);
      if (qn == 0.0) return Vector::Zero(dim);
      Vector x(g.size());
      for (int i = 0; i < g.size(); ++i) {
        double mag = std::pow(std::abs(g[i]) / qn, q - 1.0);
        x[i] = g[i] >= 0.0 ? -r * mag : r * mag;
      }
      return x;
    };
  }
  return s;
}

/// Probability simplex with the entropy divergence; the proximal step is the
/// multiplicative-weights update.
inline FeasibleSet make_simplex(int dim) {
  FeasibleSet s;
  s.dim = dim;
  s.contains = [](const Vector& x, double tol) {
    double sum = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      if (x[i] < -tol) return false;
      sum += x[i];
    }
    return std::abs(sum - 1.0) <= tol;
  };
  s.bregman_project = [](const Vector& c, const Vector& g, double step) -> Vector {
    Vector logw(c.size());
    for (int i = 0; i < c.size(); ++i) logw[i] = std::log(c[i]) - step * g[i];
    double m = logw.maxCoeff();
    Vector w = (logw.array() - m).exp();
    double z = w.sum();
    if (!(z > 0.0) || !std::isfinite(z)) throw ProjectionFailure("simplex step: degenerate weights");
    return w / z;
  };
  s.linear_oracle = [dim](const Vector& g) -> Vector {
    int best = 0;
    for (int i = 1; i < g.size(); ++i) {
      if (g[i] < g[best]) best = i;
    }
    Vector x = Vector::Zero(dim);
    x[best] = 1.0;
    return x;
  };
  return s;
}

}  // namespace fengame

#endif  // FENGAME_SETS_HPP_
