#ifndef FENGAME_DIAGNOSTICS_HPP_
#define FENGAME_DIAGNOSTICS_HPP_

#include <cmath>
#include <random>

#include "fengame/core.hpp"

namespace fengame {

/// Sampled validation of the smooth bundle's self-consistency. Each check
/// returns the worst violation found so the caller decides the tolerance.

inline double max_gradient_fd_error(const Objective& f, std::uint64_t seed, int probes = 20,
                                    double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  const double h = 1e-6;
  for (int k = 0; k < probes; ++k) {
    Vector x(f.dim);
    for (int i = 0; i < f.dim; ++i) x[i] = scale * normal(rng);
    Vector g = f.gradient(x);
    for (int i = 0; i < f.dim; ++i) {
      Vector e = Vector::Zero(f.dim);
      e[i] = h;
      double fd = (f.value(x + e) - f.value(x - e)) / (2.0 * h);
      double denom = 1.0 + std::abs(g[i]);
      worst = std::max(worst, std::abs(fd - g[i]) / denom);
    }
  }
  return worst;
}

/// Worst violation of ||grad(u) - grad(v)|| <= L ||u - v|| over sampled pairs,
/// reported as a ratio overshoot (0 when the bound holds everywhere).
inline double max_smoothness_violation(const Objective& f, std::uint64_t seed, int pairs = 1000,
                                       double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    Vector u(f.dim), v(f.dim);
    for (int i = 0; i < f.dim; ++i) {
      u[i] = scale * normal(rng);
      v[i] = scale * normal(rng);
    }
    double lhs = (f.gradient(u) - f.gradient(v)).norm();
    double rhs = f.smoothness_L * (u - v).norm();
    worst = std::max(worst, (lhs - rhs) / (1.0 + rhs));
  }
  return worst;
}

/// Worst violation of f(v) >= f(u) + <grad(u), v-u> + mu/2 ||v-u||^2.
inline double max_strong_convexity_violation(const Objective& f, std::uint64_t seed, int pairs = 1000,
                                             double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    Vector u(f.dim), v(f.dim);
    for (int i = 0; i < f.dim; ++i) {
      u[i] = scale * normal(rng);
      v[i] = scale * normal(rng);
    }
    double lhs = f.value(u) + f.gradient(u).dot(v - u) +
                 0.5 * f.strong_convexity_mu * (v - u).squaredNorm();
    double rhs = f.value(v);
    worst = std::max(worst, (lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

/// Worst relative disagreement between the analytic conjugate and the exact
/// conjugate value at gradient points.
inline double max_conjugate_inconsistency(const Objective& f, std::uint64_t seed, int probes = 100,
                                          double scale = 1.0) {
  if (!f.has_conjugate()) throw ConjugateUnavailable("conjugate check needs an analytic conjugate");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    Vector w(f.dim);
    for (int i = 0; i < f.dim; ++i) w[i] = scale * normal(rng);
    double via_witness = conjugate_at_gradient(f, w);
    double analytic = f.analytic_conjugate(f.gradient(w));
    worst = std::max(worst, std::abs(via_witness - analytic) / (1.0 + std::abs(analytic)));
  }
  return worst;
}

}  // namespace fengame

#endif  // FENGAME_DIAGNOSTICS_HPP_
