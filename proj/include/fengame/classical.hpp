#ifndef FENGAME_CLASSICAL_HPP_
#define FENGAME_CLASSICAL_HPP_

#include <cmath>
#include <functional>
#include <vector>

#include "fengame/core.hpp"
#include "fengame/engine.hpp"
#include "fengame/learners.hpp"
#include "fengame/schedule.hpp"
#include "fengame/sets.hpp"

namespace fengame {

/// Per-round deviation report between two iterate sequences. Deviation at
/// round t is ||a_t - b_t||_inf / (1 + ||b_t||_inf).
struct EquivalenceReport {
  double max_rel_dev = 0.0;
  int worst_round = -1;
  bool pass = false;
  std::vector<double> per_round;
};

inline EquivalenceReport check_equivalence(const std::vector<Vector>& a, const std::vector<Vector>& b,
                                           double rel_tol = 1e-9) {
  EquivalenceReport rep;
  const size_t n = std::min(a.size(), b.size());
  rep.per_round.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    double dev = (a[i] - b[i]).lpNorm<Eigen::Infinity>() / (1.0 + b[i].lpNorm<Eigen::Infinity>());
    rep.per_round.push_back(dev);
    if (dev > rep.max_rel_dev) {
      rep.max_rel_dev = dev;
      rep.worst_round = static_cast<int>(i);
    }
  }
  rep.pass = a.size() == b.size() && rep.max_rel_dev <= rel_tol;
  return rep;
}

/// Two-sequence momentum recursion:
///   w_t = z_{t-1} - theta * grad(z_{t-1})
///   z_t = w_t + ((t-1)/(t+2)) * (w_t - w_{t-1}),   w_0 = z_0 = x0.
/// Returns w_0..w_T and z_0..z_T.
struct MomentumTrajectory {
  std::vector<Vector> w, z;
};

inline MomentumTrajectory nesterov83_run(const Objective& f, const Vector& x0, double theta, int T) {
  MomentumTrajectory out;
  out.w.reserve(static_cast<size_t>(T) + 1);
  out.z.reserve(static_cast<size_t>(T) + 1);
  out.w.push_back(x0);
  out.z.push_back(x0);
  for (int t = 1; t <= T; ++t) {
    Vector w_t = out.z.back() - theta * f.gradient(out.z.back());
    const Vector& w_prev = out.w.back();
    double coeff = static_cast<double>(t - 1) / static_cast<double>(t + 2);
    Vector z_t = w_t + coeff * (w_t - w_prev);
    out.w.push_back(w_t);
    out.z.push_back(std::move(z_t));
  }
  return out;
}

/// Momentum recursion on the averaged iterates with the gradient taken at the
/// previous average:
///   xbar_t = xbar_{t-1} - (gamma_t alpha_t^2 / A_t) grad(xbar_{t-1})
///            + (alpha_t A_{t-2} / (A_t alpha_{t-1})) (xbar_{t-1} - xbar_{t-2}).
/// Returns xbar_0..xbar_T with xbar_0 = x0.
inline std::vector<Vector> heavy_ball_run(const Objective& f, const Vector& x0,
                                          const std::function<double(int)>& gamma,
                                          const WeightSchedule& schedule, int T) {
  std::vector<Vector> xbar;
  xbar.reserve(static_cast<size_t>(T) + 1);
  xbar.push_back(x0);
  for (int t = 1; t <= T; ++t) {
    const double alpha_t = schedule.weight_at(t);
    const double A_t = schedule.cumulative_at(t);
    const double A_tm2 = t >= 2 ? schedule.cumulative_at(t - 2) : 0.0;
    Vector next = xbar.back() - (gamma(t) * alpha_t * alpha_t / A_t) * f.gradient(xbar.back());
    if (t >= 2 && A_tm2 > 0.0) {
      const double momentum = alpha_t * A_tm2 / (A_t * schedule.weight_at(t - 1));
      next += momentum * (xbar[static_cast<size_t>(t) - 1] - xbar[static_cast<size_t>(t) - 2]);
    }
    xbar.push_back(std::move(next));
  }
  return xbar;
}

/// One-memory interpolation scheme (proximal flavor):
///   z_t = (1-beta_t) w_{t-1} + beta_t x_{t-1},  beta_t = 2/(t+1)
///   x_t = argmin_{x in K} gammap_t <grad(z_t), x> + V_{x_{t-1}}(x),  gammap_t = t/(4L)
///   w_t = (1-beta_t) w_{t-1} + beta_t x_t.
/// Returns w_1..w_T and z_1..z_T.
struct InterpolatedTrajectory {
  std::vector<Vector> w, z, x;
};

inline InterpolatedTrajectory nesterov_1mem_run(const Objective& f, const FeasibleSet& set,
                                                const Vector& x0, int T) {
  const double L = f.smoothness_L;
  InterpolatedTrajectory out;
  Vector w = x0, x = x0;
  for (int t = 1; t <= T; ++t) {
    const double beta = 2.0 / (t + 1.0);
    Vector z = (1.0 - beta) * w + beta * x;
    const double gammap = static_cast<double>(t) / (4.0 * L);
    x = set.bregman_project(x, f.gradient(z), gammap);
    w = (1.0 - beta) * w + beta * x;
    out.z.push_back(z);
    out.x.push_back(x);
    out.w.push_back(w);
  }
  return out;
}

/// Full-memory variant: the iterate solves the regularized weighted-gradient
/// aggregation with weights theta_s = s and R = ||.||^2/2:
///   x_t = argmin_{x in K} <x, sum_{s<=t} s * grad(z_s)> + (1/eta) R(x).
inline InterpolatedTrajectory nesterov_infmem_run(const Objective& f, const FeasibleSet& set,
                                                  double eta, const Vector& x0, int T) {
  InterpolatedTrajectory out;
  Regularizer reg = half_squared_norm_regularizer(set);
  Vector w = x0, x = x0;
  Vector gsum = Vector::Zero(f.dim);
  for (int t = 1; t <= T; ++t) {
    const double beta = 2.0 / (t + 1.0);
    Vector z = (1.0 - beta) * w + beta * x;
    gsum += static_cast<double>(t) * f.gradient(z);
    x = reg.argmin(gsum, eta);
    w = (1.0 - beta) * w + beta * x;
    out.z.push_back(z);
    out.x.push_back(x);
    out.w.push_back(w);
  }
  return out;
}

/// Proximal recursion over the composite objective, alpha_t = t and a fixed
/// gamma (default 1/(4L)):
///   x_t = prox_{t*gamma*psi}(x_{t-1} - t*gamma*grad(xtilde_t)).
/// Returns the averaged trajectory xbar_1..xbar_T.
inline std::vector<Vector> accel_prox_run(const Objective& f, const CompositeTerm& psi,
                                          const Vector& x0, int T, double gamma = -1.0) {
  if (gamma <= 0.0) gamma = 1.0 / (4.0 * f.smoothness_L);
  const WeightSchedule sched = WeightSchedule::linear();
  LearnerConfig cfg;
  cfg.gamma = [gamma](int) { return gamma; };
  std::vector<Vector> xbars;
  xbars.reserve(static_cast<size_t>(T));
  Vector x_prev = x0, xbar_prev = x0;
  double A_prev = 0.0;
  for (int t = 1; t <= T; ++t) {
    const double alpha = sched.weight_at(t);
    const double A = A_prev + alpha;
    RoundContext ctx;
    ctx.t = t;
    ctx.alpha_t = alpha;
    ctx.A_t = A;
    ctx.A_prev = A_prev;
    ctx.x_prev = x_prev;
    ctx.xbar_prev = xbar_prev;
    ctx.xtilde_t = hint_shifted_average(A_prev, xbar_prev, alpha, x_prev);
    Vector y = f.gradient(ctx.xtilde_t);
    Vector x = prox_md_x_step(cfg, psi, ctx, y);
    Vector xbar = weighted_average_step(A_prev, xbar_prev, alpha, x);
    x_prev = x;
    xbar_prev = xbar;
    A_prev = A;
    xbars.push_back(std::move(xbar));
  }
  return xbars;
}

/// Conditional-gradient recursion with the squared-gauge leader, alpha_t = t.
/// Returns the averaged trajectory xbar_1..xbar_T; every iterate stays in the
/// set because the leader plays rho_t * xhat_t with rho_t in [0, 1].
inline std::vector<Vector> accel_fw_run(const Objective& f, const FeasibleSet& set, double eta,
                                        const Vector& x0, int T) {
  const WeightSchedule sched = WeightSchedule::linear();
  std::vector<Vector> xbars;
  xbars.reserve(static_cast<size_t>(T));
  Vector x_prev = x0, xbar_prev = x0;
  double A_prev = 0.0;
  Vector ysum = Vector::Zero(f.dim);
  for (int t = 1; t <= T; ++t) {
    const double alpha = sched.weight_at(t);
    const double A = A_prev + alpha;
    RoundContext ctx;
    ctx.t = t;
    ctx.alpha_t = alpha;
    ctx.A_t = A;
    ctx.A_prev = A_prev;
    ctx.x_prev = x_prev;
    ctx.xbar_prev = xbar_prev;
    ctx.xtilde_t = hint_shifted_average(A_prev, xbar_prev, alpha, x_prev);
    Vector y = f.gradient(ctx.xtilde_t);
    ysum += alpha * y;
    ctx.y_weighted_sum = ysum;
    Vector x = fw_gauge_x_step(set, eta, ctx, y);
    Vector xbar = weighted_average_step(A_prev, xbar_prev, alpha, x);
    x_prev = x;
    xbar_prev = xbar;
    A_prev = A;
    xbars.push_back(std::move(xbar));
  }
  return xbars;
}

}  // namespace fengame

#endif  // FENGAME_CLASSICAL_HPP_
