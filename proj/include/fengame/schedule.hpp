#ifndef FENGAME_SCHEDULE_HPP_
#define FENGAME_SCHEDULE_HPP_

#include <cmath>
#include <cstdint>

#include "fengame/core.hpp"

namespace fengame {

/// Generator of the positive per-round weights and their running totals.
///
/// linear:      alpha_t = t, A_t = t(t+1)/2 (computed in integer arithmetic)
/// constant:    alpha_t = a
/// exponential: ratio = 1/sqrt(6*kappa); the warm-started total obeys
///              Atilde_t = Atilde_{t-1} / (1 - ratio) with Atilde_0 = alpha0,
///              and alpha_t = ratio * Atilde_t, so alpha_t / Atilde_t is the
///              ratio by construction.
class WeightSchedule {
 public:
  enum class Kind { linear, constant, exponential_kappa };

  static WeightSchedule linear() { return WeightSchedule(Kind::linear, 1.0, 0.0, 0.0); }

  static WeightSchedule constant(double alpha = 1.0) {
    return WeightSchedule(Kind::constant, alpha, 0.0, 0.0);
  }

  static WeightSchedule exponential(double kappa, double alpha0 = 1.0) {
    if (!(kappa >= 1.0)) throw InvalidKappa("exponential schedule requires kappa >= 1");
    if (!(alpha0 > 0.0)) throw Error("exponential schedule requires alpha0 > 0");
    const double theta = 1.0 / std::sqrt(6.0 * kappa);
    return WeightSchedule(Kind::exponential_kappa, 0.0, theta, alpha0);
  }

  Kind kind() const { return kind_; }
  double alpha0() const { return kind_ == Kind::exponential_kappa ? alpha0_ : 0.0; }
  double theta() const { return theta_; }

  double weight_at(int t) const {
    switch (kind_) {
      case Kind::linear:
        return static_cast<double>(t);
      case Kind::constant:
        return base_;
      case Kind::exponential_kappa:
        return theta_ * tilde_cumulative_at(t);
    }
    return 0.0;
  }

  /// A_t = sum of alpha_1..alpha_t; A_0 = 0.
  double cumulative_at(int t) const {
    switch (kind_) {
      case Kind::linear: {
        const std::int64_t n = t;
        return static_cast<double>(n * (n + 1) / 2);
      }
      case Kind::constant:
        return base_ * static_cast<double>(t);
      case Kind::exponential_kappa:
        return tilde_cumulative_at(t) - alpha0_;
    }
    return 0.0;
  }

  /// Atilde_t = alpha0 + A_t (warm-started total; equals A_t when there is no
  /// warmup weight).
  double tilde_cumulative_at(int t) const {
    if (kind_ == Kind::exponential_kappa) {
      return alpha0_ * std::pow(1.0 - theta_, -static_cast<double>(t));
    }
    return cumulative_at(t);
  }

 private:
  WeightSchedule(Kind kind, double base, double theta, double alpha0)
      : kind_(kind), base_(base), theta_(theta), alpha0_(alpha0) {}

  Kind kind_;
  double base_;
  double theta_;
  double alpha0_;
};

inline WeightSchedule make_schedule_linear() { return WeightSchedule::linear(); }

inline WeightSchedule make_schedule_exponential(double kappa, double alpha0 = 1.0) {
  return WeightSchedule::exponential(kappa, alpha0);
}

}  // namespace fengame

#endif  // FENGAME_SCHEDULE_HPP_
