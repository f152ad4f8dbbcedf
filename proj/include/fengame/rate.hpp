#ifndef FENGAME_RATE_HPP_
#define FENGAME_RATE_HPP_

#include <cmath>
#include <utility>
#include <vector>

#include "fengame/core.hpp"

namespace fengame {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares on (log T, log gap). Needs at least three points
/// with strictly positive gaps; a gap at or below 1e-15 means the run hit
/// machine precision and there is no rate to fit.
inline RateFit fit_rate_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw Error("fit_rate_slope: need at least 3 points");
  for (const auto& [T, gap] : points) {
    if (gap <= 1e-15) throw DegenerateFit("fit_rate_slope: gap at machine precision, rate is exact");
    if (!(T > 0.0)) throw Error("fit_rate_slope: nonpositive round count");
  }
  const double n = static_cast<double>(points.size());
  double su = 0.0, sv = 0.0;
  for (const auto& [T, gap] : points) {
    su += std::log(T);
    sv += std::log(gap);
  }
  const double mu = su / n, mv = sv / n;
  double suu = 0.0, suv = 0.0, svv = 0.0;
  for (const auto& [T, gap] : points) {
    const double du = std::log(T) - mu;
    const double dv = std::log(gap) - mv;
    suu += du * du;
    suv += du * dv;
    svv += dv * dv;
  }
  RateFit fit;
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  fit.r2 = svv > 0.0 ? (suv * suv) / (suu * svv) : 1.0;
  return fit;
}

}  // namespace fengame

#endif  // FENGAME_RATE_HPP_
