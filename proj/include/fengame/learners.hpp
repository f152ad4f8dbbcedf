#ifndef FENGAME_LEARNERS_HPP_
#define FENGAME_LEARNERS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "fengame/core.hpp"
#include "fengame/schedule.hpp"
#include "fengame/sets.hpp"
#include "fengame/trace.hpp"

namespace fengame {

/// Per-round view handed to the step functions. `y_weighted_sum` includes the
/// current round (the x-player moves second and sees y_t).
struct RoundContext {
  int t = 0;
  double alpha_t = 0.0;
  double A_t = 0.0;
  double A_prev = 0.0;
  Vector x_prev;
  Vector xbar_prev;
  Vector xtilde_t;
  Vector y_weighted_sum;
};

/// Simple convex term with a proximal map; the built-ins cover the l1 norm
/// and the zero function.
struct CompositeTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;  // prox_{lambda * psi}(v)

  bool has_prox() const { return static_cast<bool>(prox); }
};

inline CompositeTerm zero_term() {
  CompositeTerm t;
  t.value = [](const Vector&) { return 0.0; };
  t.prox = [](const Vector& v, double) { return v; };
  return t;
}

inline double soft_threshold(double v, double k) {
  if (v > k) return v - k;
  if (v < -k) return v + k;
  return 0.0;
}

inline CompositeTerm l1_term(double lambda) {
  CompositeTerm t;
  t.value = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
  t.prox = [lambda](const Vector& v, double step) {
    Vector out(v.size());
    const double k = lambda * step;
    for (int i = 0; i < v.size(); ++i) out[i] = soft_threshold(v[i], k);
    return out;
  };
  return t;
}

/// 1-strongly-convex (modulus `beta` w.r.t. L2) regularizer for the
/// leader-style x-player: argmin_{x in K} <x, s> + (1/eta) R(x).
struct Regularizer {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> argmin;  // (weighted sum s, eta)
  Vector minimizer_z;
  double beta = 1.0;
};

inline Regularizer half_squared_norm_regularizer(const FeasibleSet& set) {
  Regularizer r;
  r.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  // argmin <x, s> + ||x||^2/(2 eta) over K is the Euclidean projection of
  // -eta*s, which is exactly a Bregman step from the origin.
  r.argmin = [set](const Vector& s, double eta) {
    return set.bregman_project(Vector::Zero(s.size()), s, eta);
  };
  r.minimizer_z = Vector::Zero(set.dim);
  r.beta = 1.0;
  return r;
}

/// Squared gauge of the set, used for accounting on conditional-gradient
/// runs; the argmin is played by the dedicated gauge step, not through here.
inline Regularizer gauge_squared_regularizer(const FeasibleSet& set) {
  if (!set.has_gauge()) throw MissingOracle("gauge regularizer needs a gauge");
  Regularizer r;
  r.value = [g = set.gauge](const Vector& x) {
    const double v = g(x);
    return v * v;
  };
  r.minimizer_z = Vector::Zero(set.dim);
  r.beta = set.gauge_sq_beta;
  return r;
}

/// Learner knobs shared by the x-player strategies.
struct LearnerConfig {
  std::function<double(int)> gamma;  // non-increasing step scale, per unit weight
  double eta = 0.0;
  BregmanGeometry geometry;
  Regularizer regularizer;
};

/// gamma_t == 1/(4L), the constant endpoint of the admissible window.
inline LearnerConfig corollary_config(double L) {
  LearnerConfig cfg;
  cfg.gamma = [L](int) { return 1.0 / (4.0 * L); };
  cfg.eta = 1.0 / (4.0 * L);
  cfg.geometry = euclidean_geometry();
  return cfg;
}

/// gamma_t = (t+1)/(8Lt): non-increasing, starts at 1/(4L), tends to 1/(8L).
inline LearnerConfig nesterov83_config(double L) {
  LearnerConfig cfg;
  cfg.gamma = [L](int t) { return (static_cast<double>(t) + 1.0) / (8.0 * L * static_cast<double>(t)); };
  cfg.eta = 1.0 / (4.0 * L);
  cfg.geometry = euclidean_geometry();
  return cfg;
}

// ---------------------------------------------------------------------------
// y-player strategies (gradient player; moves first)
// ---------------------------------------------------------------------------

/// Optimistic leader: replays the previous loss as a hint for the unseen
/// round, which lands on the gradient at the hint-shifted average.
inline Vector oftl_y_step(const Objective& f, const RoundContext& ctx) {
  return f.gradient(ctx.xtilde_t);
}

/// Plain leader: best response to the weighted history, the gradient at the
/// previous weighted average.
inline Vector ftl_y_step(const Objective& f, const RoundContext& ctx) {
  return f.gradient(ctx.xbar_prev);
}

// ---------------------------------------------------------------------------
// x-player strategies (iterate player; moves second, sees y_t)
// ---------------------------------------------------------------------------

namespace detail {
// Shared unconstrained Euclidean step so that the gradient-descent player and
// the Euclidean proximal player produce bit-identical iterates.
inline Vector euclidean_step(const Vector& x_prev, double step, const Vector& g) {
  return x_prev - step * g;
}
}  // namespace detail

inline Vector mirror_descent_x_step(const LearnerConfig& cfg, const FeasibleSet& set,
                                    const RoundContext& ctx, const Vector& y_t) {
  return set.bregman_project(ctx.x_prev, ctx.alpha_t * y_t, cfg.gamma(ctx.t));
}

inline Vector ogd_x_step(const LearnerConfig& cfg, const RoundContext& ctx, const Vector& y_t) {
  return detail::euclidean_step(ctx.x_prev, cfg.gamma(ctx.t), ctx.alpha_t * y_t);
}

inline Vector btrl_x_step(const LearnerConfig& cfg, const FeasibleSet& set, const RoundContext& ctx,
                          const Vector& y_t) {
  (void)set;
  (void)y_t;  // already folded into the running sum
  return cfg.regularizer.argmin(ctx.y_weighted_sum, cfg.eta);
}

inline Vector prox_md_x_step(const LearnerConfig& cfg, const CompositeTerm& psi,
                             const RoundContext& ctx, const Vector& y_t) {
  if (!psi.has_prox()) throw ProxUnavailable("prox step: composite term has no proximal map");
  const double step = ctx.alpha_t * cfg.gamma(ctx.t);
  return psi.prox(detail::euclidean_step(ctx.x_prev, cfg.gamma(ctx.t), ctx.alpha_t * y_t), step);
}

/// Leader for the strongly convex game, warm-started with the loss
/// alpha0 * mu * ||x||^2 / 2. The cumulative loss is spherical, so the
/// constrained argmin over an L2 ball is the Euclidean projection of the
/// unconstrained one.
inline Vector btl_strongly_convex_x_step(const Objective& f, const WeightSchedule& schedule,
                                         const RoundContext& ctx, const Vector& y_t,
                                         const FeasibleSet* set = nullptr) {
  (void)y_t;
  if (!(f.strong_convexity_mu > 0.0)) {
    throw RequiresStrongConvexity("strongly convex leader needs mu > 0");
  }
  const double mu = f.strong_convexity_mu;
  const double A_tilde = schedule.tilde_cumulative_at(ctx.t);
  Vector u = -ctx.y_weighted_sum / (mu * A_tilde);
  if (set != nullptr) {
    u = set->bregman_project(u, Vector::Zero(u.size()), 1.0);
  }
  return u;
}

/// Leader regularized by the squared gauge, split as a linear-oracle call
/// plus a 1-D quadratic over the rescaling: for L_t = sum alpha_s y_s the
/// inner minimum over the set is the oracle point and the outer problem
/// min_{rho in [0,1]} rho <xhat, L_t> + rho^2/eta clamps at -eta<xhat,L_t>/2.
inline Vector fw_gauge_x_step(const FeasibleSet& set, double eta, const RoundContext& ctx,
                              const Vector& y_t) {
  (void)y_t;
  if (!set.has_gauge() || !set.has_linear_oracle()) {
    throw MissingOracle("gauge leader needs both a gauge and a linear oracle");
  }
  const Vector& L_t = ctx.y_weighted_sum;
  const Vector xhat = set.linear_oracle(L_t);
  const double inner = xhat.dot(L_t);
  const double rho = std::clamp(-eta * inner / 2.0, 0.0, 1.0);
  return rho * xhat;
}

}  // namespace fengame

#endif  // FENGAME_LEARNERS_HPP_
