#ifndef FENGAME_CORE_HPP_
#define FENGAME_CORE_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fengame {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConjugateUnavailable : Error {
  using Error::Error;
};
struct InvalidKappa : Error {
  using Error::Error;
};
struct ProjectionFailure : Error {
  using Error::Error;
};
struct ProxUnavailable : Error {
  using Error::Error;
};
struct RequiresStrongConvexity : Error {
  using Error::Error;
};
struct MissingOracle : Error {
  using Error::Error;
};
struct NoReferenceMinimizer : Error {
  using Error::Error;
};
struct DegenerateFit : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct SpecMismatch : Error {
  using Error::Error;
};

/// A smooth convex function bundle. `value` and `gradient` must be defined on
/// all of R^dim; `smoothness_L` is a Lipschitz constant of the gradient and
/// `strong_convexity_mu` is 0 for merely convex functions. The conjugate and
/// the minimizer are optional extras used for exact accounting when known.
struct Objective {
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double smoothness_L = 0.0;
  double strong_convexity_mu = 0.0;
  std::function<double(const Vector&)> analytic_conjugate;  // empty if unknown
  std::optional<Vector> minimizer;
  std::optional<double> min_value;

  bool has_conjugate() const { return static_cast<bool>(analytic_conjugate); }
};

/// Conjugate value at a gradient point: for y = grad(w) the conjugate equals
/// <w, y> - f(w), which is exact and needs no auxiliary optimization.
inline double conjugate_via_witness(const Objective& f, const Vector& y, const Vector& witness) {
  return witness.dot(y) - f.value(witness);
}

inline double conjugate_at_gradient(const Objective& f, const Vector& w) {
  return conjugate_via_witness(f, f.gradient(w), w);
}

/// Game payoff <x, y> - f*(y). The two-argument form requires an analytic
/// conjugate; the witness form evaluates f* exactly at y = grad(witness).
inline double payoff(const Objective& f, const Vector& x, const Vector& y) {
  if (!f.has_conjugate()) {
    throw ConjugateUnavailable("payoff: objective has no analytic conjugate and no witness was supplied");
  }
  return x.dot(y) - f.analytic_conjugate(y);
}

inline double payoff(const Objective& f, const Vector& x, const Vector& y, const Vector& witness) {
  return x.dot(y) - conjugate_via_witness(f, y, witness);
}

/// Distance-generating bundle for proximal steps: a 1-strongly convex
/// potential, its gradient, and the induced divergence
///   V_c(x) = potential(x) - <potential_gradient(c), x - c> - potential(c).
struct BregmanGeometry {
  std::function<double(const Vector&)> potential;
  std::function<Vector(const Vector&)> potential_gradient;
  std::function<double(const Vector&, const Vector&)> divergence;  // (c, x) -> V_c(x)
};

inline BregmanGeometry euclidean_geometry() {
  BregmanGeometry g;
  g.potential = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  g.potential_gradient = [](const Vector& x) { return x; };
  g.divergence = [](const Vector& c, const Vector& x) { return 0.5 * (x - c).squaredNorm(); };
  return g;
}

/// Negative entropy on the positive orthant; the divergence is the
/// generalized KL divergence, which restricts to KL proper on the simplex.
inline BregmanGeometry entropy_geometry() {
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  BregmanGeometry g;
  g.potential = [xlogx](const Vector& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += xlogx(x[i]);
    return s;
  };
  g.potential_gradient = [](const Vector& x) {
    Vector out(x.size());
    for (int i = 0; i < x.size(); ++i) out[i] = 1.0 + std::log(x[i]);
    return out;
  };
  g.divergence = [xlogx](const Vector& c, const Vector& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      s += xlogx(x[i]) - x[i] * std::log(c[i]) + c[i] - x[i];
    }
    return s;
  };
  return g;
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace fengame

#endif  // FENGAME_CORE_HPP_
