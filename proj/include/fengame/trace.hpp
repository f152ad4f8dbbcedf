#ifndef FENGAME_TRACE_HPP_
#define FENGAME_TRACE_HPP_

#include <optional>
#include <vector>

#include "fengame/core.hpp"
#include "fengame/schedule.hpp"

namespace fengame {

/// One round of game play. `xbar` is the running weighted average of the
/// x-iterates; `xtilde` is the hint-shifted average that replays the previous
/// iterate with the current round's weight:
///   xbar_t   = (1/A_t) * sum_{s<=t} alpha_s x_s
///   xtilde_t = (1/A_t) * (alpha_t x_{t-1} + sum_{s<t} alpha_s x_s)
struct Round {
  int t = 0;
  double alpha = 0.0;
  double A = 0.0;  // running total including this round
  Vector x, y, xbar, xtilde;
  double f_xbar = 0.0;       // smooth part at xbar
  double psi_xbar = 0.0;     // composite part at xbar (0 for plain games)
  double fstar_y = 0.0;      // conjugate value at y (exact, via witness)
  double xy = 0.0;           // <x_t, y_t>
  double psi_x = 0.0;        // composite part at x_t
  double loss_y_weighted = 0.0;  // alpha * (f*(y_t) - <x_t, y_t>)
  double loss_x_weighted = 0.0;  // alpha * h_t(x_t)
};

/// Full record of one game run. For the strongly convex variant `mu_game` and
/// `alpha0` are set and `x0` is the warmup point (the origin); otherwise `x0`
/// is the user's start point.
struct GameTrace {
  enum class Game { plain, composite, strongly_convex };

  Game game = Game::plain;
  double mu_game = 0.0;
  double alpha0 = 0.0;
  Vector x0;
  std::vector<Round> rounds;
  Vector xbar_final, ybar_final;
  std::optional<int> aborted_at;  // set when a non-finite iterate stopped the run

  int rounds_completed() const { return static_cast<int>(rounds.size()); }
};

/// xbar_t from xbar_{t-1}: A_t * xbar_t = A_{t-1} * xbar_{t-1} + alpha_t * x_t.
inline Vector weighted_average_step(double A_prev, const Vector& xbar_prev, double alpha_t,
                                    const Vector& x_t) {
  return (A_prev * xbar_prev + alpha_t * x_t) / (A_prev + alpha_t);
}

/// xtilde_t from the round-(t-1) state. At t = 1 this collapses to x_0.
inline Vector hint_shifted_average(double A_prev, const Vector& xbar_prev, double alpha_t,
                                   const Vector& x_prev) {
  return (alpha_t * x_prev + A_prev * xbar_prev) / (A_prev + alpha_t);
}

/// Averaging step in trace form: consumes rounds 1..t-1 of `trace` plus the
/// new iterate x_t and returns (xbar_t, xtilde_{t+1}).
inline std::pair<Vector, Vector> update_averages(const GameTrace& trace, int t, const Vector& x_t,
                                                 const WeightSchedule& schedule) {
  const double alpha_t = schedule.weight_at(t);
  double A_prev = 0.0;
  Vector xbar_prev = trace.x0;
  if (t >= 2) {
    const Round& prev = trace.rounds.at(static_cast<size_t>(t - 2));
    A_prev = prev.A;
    xbar_prev = prev.xbar;
  }
  Vector xbar_t = weighted_average_step(A_prev, xbar_prev, alpha_t, x_t);
  const double A_t = A_prev + alpha_t;
  Vector xtilde_next = hint_shifted_average(A_t, xbar_t, schedule.weight_at(t + 1), x_t);
  return {std::move(xbar_t), std::move(xtilde_next)};
}

}  // namespace fengame

#endif  // FENGAME_TRACE_HPP_
