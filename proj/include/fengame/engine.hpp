#ifndef FENGAME_ENGINE_HPP_
#define FENGAME_ENGINE_HPP_

#include <optional>
#include <string>
#include <utility>

#include "fengame/core.hpp"
#include "fengame/learners.hpp"
#include "fengame/schedule.hpp"
#include "fengame/sets.hpp"
#include "fengame/trace.hpp"

namespace fengame {

enum class YStrategy { OFTL, FTL };
enum class XStrategy { MirrorDescent, OGD, BTRL, ProxMD, StronglyConvexBTL, FWGauge };

inline const char* to_string(YStrategy s) { return s == YStrategy::OFTL ? "oftl" : "ftl"; }

inline const char* to_string(XStrategy s) {
  switch (s) {
    case XStrategy::MirrorDescent: return "mirror_descent";
    case XStrategy::OGD: return "ogd";
    case XStrategy::BTRL: return "btrl";
    case XStrategy::ProxMD: return "prox_md";
    case XStrategy::StronglyConvexBTL: return "sc_btl";
    case XStrategy::FWGauge: return "fw_gauge";
  }
  return "?";
}

struct GameSpec {
  Objective objective;
  FeasibleSet set;
  WeightSchedule schedule = WeightSchedule::linear();
  YStrategy y_strategy = YStrategy::OFTL;
  XStrategy x_strategy = XStrategy::OGD;
  LearnerConfig learner_config;
  std::optional<CompositeTerm> composite_psi;
  int rounds_T = 0;
  Vector start_x0;
};

inline void validate(const GameSpec& spec) {
  if (spec.rounds_T < 1) throw SpecMismatch("rounds_T must be >= 1");
  if (spec.start_x0.size() != spec.objective.dim) throw SpecMismatch("start point has wrong dimension");
  if (spec.set.dim != spec.objective.dim) throw SpecMismatch("set and objective dimensions differ");
  switch (spec.x_strategy) {
    case XStrategy::ProxMD:
      if (!spec.composite_psi) throw SpecMismatch("prox player needs a composite term");
      if (!spec.composite_psi->has_prox()) throw ProxUnavailable("composite term lacks a proximal map");
      break;
    case XStrategy::StronglyConvexBTL:
      if (!(spec.objective.strong_convexity_mu > 0.0)) {
        throw RequiresStrongConvexity("strongly convex leader needs mu > 0");
      }
      if (spec.schedule.kind() != WeightSchedule::Kind::exponential_kappa) {
        throw SpecMismatch("strongly convex leader needs the exponential schedule");
      }
      break;
    case XStrategy::FWGauge:
      if (!spec.set.has_gauge() || !spec.set.has_linear_oracle()) {
        throw MissingOracle("gauge leader needs both a gauge and a linear oracle");
      }
      break;
    default:
      break;
  }
  if (spec.composite_psi && spec.x_strategy != XStrategy::ProxMD) {
    throw SpecMismatch("composite games are played by the prox strategy");
  }
  if (spec.x_strategy == XStrategy::MirrorDescent || spec.x_strategy == XStrategy::OGD ||
      spec.x_strategy == XStrategy::ProxMD) {
    if (!spec.learner_config.gamma) throw SpecMismatch("missing gamma schedule");
  }
}

namespace detail {

inline void finish_trace(GameTrace& trace, const Vector& ysum) {
  if (!trace.rounds.empty()) {
    trace.xbar_final = trace.rounds.back().xbar;
    trace.ybar_final = ysum / trace.rounds.back().A;
  } else {
    trace.xbar_final = trace.x0;
    trace.ybar_final = Vector::Zero(trace.x0.size());
  }
}

}  // namespace detail

/// Plays the weighted-loss game for T rounds: the gradient player moves
/// first, the iterate player answers with knowledge of y_t, and the weighted
/// averages are maintained alongside. On a non-finite iterate the run stops
/// and the partial trace is returned with `aborted_at` set.
inline GameTrace run_game(const GameSpec& spec) {
  validate(spec);
  if (spec.x_strategy == XStrategy::StronglyConvexBTL) {
    throw SpecMismatch("use run_linear_rate_game for the strongly convex leader");
  }
  const Objective& f = spec.objective;
  const WeightSchedule& sched = spec.schedule;
  LearnerConfig cfg = spec.learner_config;
  if (spec.x_strategy == XStrategy::BTRL && !cfg.regularizer.argmin) {
    cfg.regularizer = half_squared_norm_regularizer(spec.set);
  }

  GameTrace trace;
  trace.game = spec.composite_psi ? GameTrace::Game::composite : GameTrace::Game::plain;
  trace.x0 = spec.start_x0;
  trace.rounds.reserve(static_cast<size_t>(spec.rounds_T));

  Vector x_prev = spec.start_x0;
  Vector xbar_prev = spec.start_x0;  // xbar_0 := x_0 so the plain leader has a first move
  double A_prev = 0.0;
  Vector ysum = Vector::Zero(f.dim);

  for (int t = 1; t <= spec.rounds_T; ++t) {
    Round r;
    r.t = t;
    r.alpha = sched.weight_at(t);
    r.A = A_prev + r.alpha;
    r.xtilde = hint_shifted_average(A_prev, xbar_prev, r.alpha, x_prev);

    const Vector& witness = spec.y_strategy == YStrategy::OFTL ? r.xtilde : xbar_prev;
    r.y = f.gradient(witness);
    const Vector ysum_prev = ysum;
    ysum += r.alpha * r.y;

    RoundContext ctx;
    ctx.t = t;
    ctx.alpha_t = r.alpha;
    ctx.A_t = r.A;
    ctx.A_prev = A_prev;
    ctx.x_prev = x_prev;
    ctx.xbar_prev = xbar_prev;
    ctx.xtilde_t = r.xtilde;
    ctx.y_weighted_sum = ysum;

    switch (spec.x_strategy) {
      case XStrategy::MirrorDescent:
        r.x = mirror_descent_x_step(cfg, spec.set, ctx, r.y);
        break;
      case XStrategy::OGD:
        r.x = ogd_x_step(cfg, ctx, r.y);
        break;
      case XStrategy::BTRL:
        r.x = btrl_x_step(cfg, spec.set, ctx, r.y);
        break;
      case XStrategy::ProxMD:
        r.x = prox_md_x_step(cfg, *spec.composite_psi, ctx, r.y);
        break;
      case XStrategy::FWGauge:
        r.x = fw_gauge_x_step(spec.set, cfg.eta, ctx, r.y);
        break;
      case XStrategy::StronglyConvexBTL:
        break;  // unreachable, rejected above
    }

    r.xbar = weighted_average_step(A_prev, xbar_prev, r.alpha, r.x);
    if (!all_finite(r.x) || !all_finite(r.y) || !all_finite(r.xbar)) {
      trace.aborted_at = t;
      ysum = ysum_prev;
      break;
    }

    r.fstar_y = conjugate_via_witness(f, r.y, witness);
    r.xy = r.x.dot(r.y);
    r.f_xbar = f.value(r.xbar);
    r.loss_y_weighted = r.alpha * (r.fstar_y - r.xy);
    r.loss_x_weighted = r.alpha * (r.xy - r.fstar_y);
    if (spec.composite_psi) {
      r.psi_x = spec.composite_psi->value(r.x);
      r.psi_xbar = spec.composite_psi->value(r.xbar);
      r.loss_x_weighted += r.alpha * r.psi_x;
    }

    x_prev = r.x;
    xbar_prev = r.xbar;
    A_prev = r.A;
    trace.rounds.push_back(std::move(r));
  }

  detail::finish_trace(trace, ysum);
  return trace;
}

/// Strongly convex variant: the payoff carries a mu*||x||^2/2 term, the
/// gradient player acts on the reduced function f - mu*||.||^2/2, and the
/// iterate player is the warm-started strongly convex leader. The warmup
/// round contributes weight alpha0 to the totals and the point x_0 = 0.
inline GameTrace run_linear_rate_game(const GameSpec& spec) {
  if (spec.x_strategy != XStrategy::StronglyConvexBTL) {
    throw SpecMismatch("linear-rate runner expects the strongly convex leader");
  }
  validate(spec);
  const Objective& f = spec.objective;
  const double mu = f.strong_convexity_mu;
  const WeightSchedule& sched = spec.schedule;
  const bool constrained = static_cast<bool>(spec.set.gauge);  // L2 ball support only

  Objective reduced;  // f minus its strongly convex core; merely convex
  reduced.dim = f.dim;
  reduced.value = [&f, mu](const Vector& x) { return f.value(x) - 0.5 * mu * x.squaredNorm(); };
  reduced.gradient = [&f, mu](const Vector& x) { return (f.gradient(x) - mu * x).eval(); };
  reduced.smoothness_L = f.smoothness_L - mu;

  GameTrace trace;
  trace.game = GameTrace::Game::strongly_convex;
  trace.mu_game = mu;
  trace.alpha0 = sched.alpha0();
  trace.x0 = Vector::Zero(f.dim);  // warmup argmin of alpha0*mu*||x||^2/2
  trace.rounds.reserve(static_cast<size_t>(spec.rounds_T));

  Vector x_prev = trace.x0;
  Vector xbar_prev = trace.x0;
  double A_prev = 0.0;
  Vector ysum = Vector::Zero(f.dim);

  for (int t = 1; t <= spec.rounds_T; ++t) {
    Round r;
    r.t = t;
    r.alpha = sched.weight_at(t);
    r.A = A_prev + r.alpha;
    r.xtilde = hint_shifted_average(A_prev, xbar_prev, r.alpha, x_prev);
    r.y = reduced.gradient(r.xtilde);
    const Vector ysum_prev = ysum;
    ysum += r.alpha * r.y;

    RoundContext ctx;
    ctx.t = t;
    ctx.alpha_t = r.alpha;
    ctx.A_t = r.A;
    ctx.A_prev = A_prev;
    ctx.x_prev = x_prev;
    ctx.xbar_prev = xbar_prev;
    ctx.xtilde_t = r.xtilde;
    ctx.y_weighted_sum = ysum;

    r.x = btl_strongly_convex_x_step(f, sched, ctx, r.y, constrained ? &spec.set : nullptr);
    r.xbar = weighted_average_step(A_prev, xbar_prev, r.alpha, r.x);
    if (!all_finite(r.x) || !all_finite(r.y) || !all_finite(r.xbar)) {
      trace.aborted_at = t;
      ysum = ysum_prev;
      break;
    }

    r.fstar_y = conjugate_via_witness(reduced, r.y, r.xtilde);
    r.xy = r.x.dot(r.y);
    r.f_xbar = f.value(r.xbar);
    r.loss_y_weighted = r.alpha * (r.fstar_y - r.xy);
    r.loss_x_weighted = r.alpha * (r.xy + 0.5 * mu * r.x.squaredNorm() - r.fstar_y);

    x_prev = r.x;
    xbar_prev = r.xbar;
    A_prev = r.A;
    trace.rounds.push_back(std::move(r));
  }

  detail::finish_trace(trace, ysum);
  return trace;
}

/// Total objective value at a point, matching the game actually played.
inline double total_objective(const GameTrace& trace, const Objective& f, const Vector& x,
                              const CompositeTerm* psi = nullptr) {
  double v = f.value(x);
  if (trace.game == GameTrace::Game::composite && psi != nullptr) v += psi->value(x);
  return v;
}

/// f(xbar_T) - f(x*): the suboptimality of the averaged output against the
/// known minimizer (composite totals when a composite term was in play).
inline double duality_gap_of(const GameTrace& trace, const Objective& f,
                             const CompositeTerm* psi = nullptr,
                             const std::optional<std::pair<Vector, double>>& reference = std::nullopt) {
  double f_star;
  if (reference) {
    f_star = reference->second;
  } else if (f.min_value) {
    f_star = *f.min_value;
    if (trace.game == GameTrace::Game::composite) {
      if (!f.minimizer || psi == nullptr) {
        throw NoReferenceMinimizer("composite gap needs the composite minimizer value");
      }
      f_star += psi->value(*f.minimizer);
    }
  } else {
    throw NoReferenceMinimizer("duality gap needs a known or reference minimizer");
  }
  return total_objective(trace, f, trace.xbar_final, psi) - f_star;
}

}  // namespace fengame

#endif  // FENGAME_ENGINE_HPP_
