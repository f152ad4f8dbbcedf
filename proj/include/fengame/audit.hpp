#ifndef FENGAME_AUDIT_HPP_
#define FENGAME_AUDIT_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "fengame/core.hpp"
#include "fengame/engine.hpp"
#include "fengame/learners.hpp"
#include "fengame/trace.hpp"

namespace fengame {

/// A named inequality instance: `measured` is the left side, `bound` the
/// right side, and the check passes when the slack is nonnegative up to a
/// relative tolerance that absorbs accumulation error over long runs.
struct Certificate {
  static constexpr double kRelTol = 1e-7;

  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string statement;
};

inline Certificate make_certificate(std::string name, double measured, double bound,
                                    std::string statement) {
  Certificate c;
  c.name = std::move(name);
  c.measured = measured;
  c.bound = bound;
  c.slack = bound - measured;
  c.pass = c.slack >= -Certificate::kRelTol * (1.0 + std::abs(bound));
  c.statement = std::move(statement);
  return c;
}

namespace detail {

// Value of the function whose conjugate appears in the y-player's losses:
// the objective itself in the plain and composite games, the reduced
// function f - mu*||.||^2/2 in the strongly convex one.
inline double dual_side_value(const GameTrace& tr, const Objective& f, const Vector& x) {
  double v = f.value(x);
  if (tr.game == GameTrace::Game::strongly_convex) v -= 0.5 * tr.mu_game * x.squaredNorm();
  return v;
}

inline const Vector& x_at(const GameTrace& tr, int t) {
  // x_0 is the start point (the warmup point for the strongly convex game).
  return t == 0 ? tr.x0 : tr.rounds[static_cast<size_t>(t) - 1].x;
}

inline const Vector& xbar_at(const GameTrace& tr, int t) {
  return t == 0 ? tr.x0 : tr.rounds[static_cast<size_t>(t) - 1].xbar;
}

}  // namespace detail

/// Weighted regret of the gradient player against the optimal fixed dual
/// comparator. The comparator term is closed-form: the best response to the
/// averaged play is the gradient there, so min_y sum alpha_t l_t(y) equals
/// -A_T * F(xbar_T) for the dual-side function F.
inline double regret_y(const GameTrace& tr, const Objective& f) {
  if (tr.rounds.empty()) return 0.0;
  double s = 0.0;
  for (const Round& r : tr.rounds) s += r.loss_y_weighted;
  const Round& last = tr.rounds.back();
  return s + last.A * detail::dual_side_value(tr, f, last.xbar);
}

/// Weighted regret of the iterate player relative to a fixed comparator
/// (by convention the minimizer of the offline problem, not of the realized
/// loss sequence, so the value may be negative).
inline double regret_x(const GameTrace& tr, const Vector& x_star, const CompositeTerm* psi = nullptr) {
  double s = 0.0;
  const double psi_star = psi != nullptr ? psi->value(x_star) : 0.0;
  const double xstar_sq = x_star.squaredNorm();
  for (const Round& r : tr.rounds) {
    s += r.alpha * (r.xy - x_star.dot(r.y));
    if (tr.game == GameTrace::Game::composite && psi != nullptr) {
      s += r.alpha * (r.psi_x - psi_star);
    } else if (tr.game == GameTrace::Game::strongly_convex) {
      s += r.alpha * 0.5 * tr.mu_game * (r.x.squaredNorm() - xstar_sq);
    }
  }
  return s;
}

/// gap(xbar_T) <= (regret_x + regret_y) / A_T: the equilibrium reduction that
/// converts the players' average regrets into a suboptimality bound.
inline Certificate certify_equilibrium(const GameTrace& tr, const Objective& f, const Vector& x_star,
                                       double f_star_total, const CompositeTerm* psi = nullptr) {
  const double measured = total_objective(tr, f, tr.xbar_final, psi) - f_star_total;
  const double bound = (regret_x(tr, x_star, psi) + regret_y(tr, f)) / tr.rounds.back().A;
  return make_certificate("equilibrium_gap", measured, bound,
                          "f(xbar_T) - f* <= (regret_x + regret_y) / A_T");
}

/// Optimistic-leader regret against smoothness: the hint error contracts to
/// L * sum (alpha_t^2 / A_t) ||x_{t-1} - x_t||^2. Applies to runs where the
/// gradient player was the optimistic leader.
inline Certificate certify_oftl_smoothness(const GameTrace& tr, const Objective& f) {
  double L = f.smoothness_L;
  if (tr.game == GameTrace::Game::strongly_convex) L -= tr.mu_game;
  double bound = 0.0;
  for (int t = 1; t <= tr.rounds_completed(); ++t) {
    const Round& r = tr.rounds[static_cast<size_t>(t) - 1];
    bound += (r.alpha * r.alpha / r.A) * (detail::x_at(tr, t - 1) - r.x).squaredNorm();
  }
  bound *= L;
  return make_certificate("oftl_regret_smoothness", regret_y(tr, f), bound,
                          "regret_y <= L * sum (alpha_t^2/A_t) ||x_{t-1} - x_t||^2");
}

enum class DivergenceBoundMode { from_start, running_max };

/// Proximal-player regret: D/gamma_T minus the accumulated squared movement.
/// With a constant step the natural divergence bound is V_{x0}(x*); otherwise
/// the running maximum over the visited iterates is tracked.
inline Certificate certify_mirror_descent(const GameTrace& tr, const BregmanGeometry& geom,
                                          const std::function<double(int)>& gamma,
                                          const Vector& x_star, DivergenceBoundMode mode,
                                          const CompositeTerm* psi = nullptr) {
  const int T = tr.rounds_completed();
  double D = geom.divergence(tr.x0, x_star);
  if (mode == DivergenceBoundMode::running_max) {
    for (int t = 1; t <= T; ++t) D = std::max(D, geom.divergence(detail::x_at(tr, t), x_star));
  }
  double movement = 0.0;
  for (int t = 1; t <= T; ++t) {
    const Round& r = tr.rounds[static_cast<size_t>(t) - 1];
    movement += (detail::x_at(tr, t - 1) - r.x).squaredNorm() / (2.0 * gamma(t));
  }
  const double bound = D / gamma(T) - movement;
  return make_certificate("mirror_descent_regret", regret_x(tr, x_star, psi), bound,
                          "regret_x <= D/gamma_T - sum ||x_{t-1} - x_t||^2 / (2 gamma_t)");
}

/// Plain-leader regret under the curvature the dual losses inherit from
/// smoothness: (L/2) * sum (alpha_t^2 / A_t) ||xbar_{t-1} - x_t||^2.
/// Applies to runs where the gradient player was the plain leader.
inline Certificate certify_ftl_strong_convexity(const GameTrace& tr, const Objective& f) {
  double bound = 0.0;
  for (int t = 1; t <= tr.rounds_completed(); ++t) {
    const Round& r = tr.rounds[static_cast<size_t>(t) - 1];
    bound += (r.alpha * r.alpha / r.A) * (detail::xbar_at(tr, t - 1) - r.x).squaredNorm();
  }
  bound *= 0.5 * f.smoothness_L;
  return make_certificate("ftl_regret_strong_convexity", regret_y(tr, f), bound,
                          "regret_y <= (L/2) * sum (alpha_t^2/A_t) ||xbar_{t-1} - x_t||^2");
}

/// Regularized-leader regret; the movement telescopes against the
/// regularizer's curvature, with the leader's rest point standing in for the
/// round-zero iterate.
inline Certificate certify_btrl(const GameTrace& tr, const Regularizer& reg, double eta,
                                const Vector& x_star) {
  double movement = 0.0;
  const Vector* prev = &reg.minimizer_z;
  for (const Round& r : tr.rounds) {
    movement += (r.x - *prev).squaredNorm();
    prev = &r.x;
  }
  const double bound = (reg.value(x_star) - reg.value(reg.minimizer_z) - 0.5 * reg.beta * movement) / eta;
  return make_certificate("btrl_regret", regret_x(tr, x_star), bound,
                          "regret_x <= (R(x*) - R(z) - (beta/2) sum ||x_t - x_{t-1}||^2) / eta");
}

/// Warm-started strongly convex leader: the accumulating curvature turns the
/// movement terms into -mu*Atilde_{t-1}/2 weights and only the warmup
/// regularizer charges the comparator.
inline Certificate certify_btl_strong_convexity(const GameTrace& tr, const Vector& x_star) {
  if (tr.game != GameTrace::Game::strongly_convex) {
    throw SpecMismatch("strongly convex leader certificate needs the strongly convex game");
  }
  const double mu = tr.mu_game;
  double bound = tr.alpha0 * mu * 0.5 * x_star.squaredNorm();
  double A_tilde_prev = tr.alpha0;
  for (int t = 1; t <= tr.rounds_completed(); ++t) {
    const Round& r = tr.rounds[static_cast<size_t>(t) - 1];
    bound -= 0.5 * mu * A_tilde_prev * (detail::x_at(tr, t - 1) - r.x).squaredNorm();
    A_tilde_prev += r.alpha;
  }
  return make_certificate("btl_strong_convexity_regret", regret_x(tr, x_star), bound,
                          "regret_x <= alpha0*mu*||x*||^2/2 - sum mu*Atilde_{t-1}/2 ||x_t - x_{t-1}||^2");
}

/// Aggregate rate bound for optimistic-leader + proximal-player runs: the
/// equilibrium gap against the combined regret bounds rather than the
/// measured regrets.
inline Certificate certify_weighted_rate(const GameTrace& tr, const Objective& f,
                                         const BregmanGeometry& geom,
                                         const std::function<double(int)>& gamma, const Vector& x_star,
                                         double f_star_total, DivergenceBoundMode mode,
                                         const CompositeTerm* psi = nullptr) {
  const int T = tr.rounds_completed();
  double D = geom.divergence(tr.x0, x_star);
  if (mode == DivergenceBoundMode::running_max) {
    for (int t = 1; t <= T; ++t) D = std::max(D, geom.divergence(detail::x_at(tr, t), x_star));
  }
  double sum = 0.0;
  for (int t = 1; t <= T; ++t) {
    const Round& r = tr.rounds[static_cast<size_t>(t) - 1];
    const double move = (detail::x_at(tr, t - 1) - r.x).squaredNorm();
    sum += (r.alpha * r.alpha / r.A * f.smoothness_L - 1.0 / (2.0 * gamma(t))) * move;
  }
  const double bound = (D / gamma(T) + sum) / tr.rounds.back().A;
  const double measured = total_objective(tr, f, tr.xbar_final, psi) - f_star_total;
  return make_certificate("weighted_rate_bound", measured, bound,
                          "gap <= (D/gamma_T + sum (alpha_t^2 L/A_t - 1/(2 gamma_t)) ||dx||^2) / A_T");
}

/// Per-round accounting series used for reporting: prefix regrets, the gap of
/// the running average, and the equilibrium bound.
struct AuditSeries {
  std::vector<double> regret_x, regret_y, gap, eps_bound;
};

inline AuditSeries audit_series(const GameTrace& tr, const Objective& f, const Vector& x_star,
                                double f_star_total, const CompositeTerm* psi = nullptr) {
  AuditSeries out;
  const int T = tr.rounds_completed();
  out.regret_x.reserve(T);
  out.regret_y.reserve(T);
  out.gap.reserve(T);
  out.eps_bound.reserve(T);
  double rx = 0.0, ly = 0.0;
  const double psi_star = psi != nullptr ? psi->value(x_star) : 0.0;
  const double xstar_sq = x_star.squaredNorm();
  for (const Round& r : tr.rounds) {
    rx += r.alpha * (r.xy - x_star.dot(r.y));
    if (tr.game == GameTrace::Game::composite && psi != nullptr) {
      rx += r.alpha * (r.psi_x - psi_star);
    } else if (tr.game == GameTrace::Game::strongly_convex) {
      rx += r.alpha * 0.5 * tr.mu_game * (r.x.squaredNorm() - xstar_sq);
    }
    ly += r.loss_y_weighted;
    const double ry = ly + r.A * detail::dual_side_value(tr, f, r.xbar);
    double total = r.f_xbar + (tr.game == GameTrace::Game::composite ? r.psi_xbar : 0.0);
    out.regret_x.push_back(rx);
    out.regret_y.push_back(ry);
    out.gap.push_back(total - f_star_total);
    out.eps_bound.push_back((rx + ry) / r.A);
  }
  return out;
}

}  // namespace fengame

#endif  // FENGAME_AUDIT_HPP_
