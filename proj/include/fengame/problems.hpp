#ifndef FENGAME_PROBLEMS_HPP_
#define FENGAME_PROBLEMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fengame/core.hpp"
#include "fengame/engine.hpp"
#include "fengame/learners.hpp"
#include "fengame/sets.hpp"

namespace fengame {

/// A test objective together with its constraint set, optional composite
/// term and, when it exists, the analytic optimum. For composite instances
/// the bundled minimizer is the composite one and `min_value` is the smooth
/// part there; `optimum_total()` gives the full optimal value.
struct ProblemInstance {
  std::string name;
  Objective objective;
  FeasibleSet set;
  std::optional<CompositeTerm> psi;
  std::uint64_t seed = 0;

  bool has_optimum() const { return objective.minimizer.has_value() && objective.min_value.has_value(); }
  double optimum_total() const {
    double v = *objective.min_value;
    if (psi) v += psi->value(*objective.minimizer);
    return v;
  }
};

namespace detail {

inline Vector gaussian_vector(std::mt19937_64& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = scale * normal(rng);
  return v;
}

inline Matrix random_orthogonal(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

inline std::vector<double> log_spaced_spectrum(int dim, double kappa) {
  std::vector<double> s(dim);
  for (int i = 0; i < dim; ++i) {
    double frac = dim > 1 ? static_cast<double>(i) / (dim - 1) : 1.0;
    s[i] = std::pow(kappa, frac);
  }
  return s;
}

}  // namespace detail

/// f(x) = x'Qx/2 - b'x with Q a seeded random orthogonal conjugation of the
/// given spectrum. Everything is analytic: x* = Q^{-1} b, minimum -b'x*/2,
/// conjugate f*(y) = (y+b)' Q^{-1} (y+b) / 2.
inline ProblemInstance make_quadratic(int dim, const std::vector<double>& spectrum, const Vector& b,
                                      std::uint64_t seed) {
  if (static_cast<int>(spectrum.size()) != dim || b.size() != dim) {
    throw Error("make_quadratic: spectrum/b dimension mismatch");
  }
  std::mt19937_64 rng(seed);
  Matrix u = detail::random_orthogonal(rng, dim);
  Vector d = Eigen::Map<const Vector>(spectrum.data(), dim);
  auto q = std::make_shared<Matrix>(u * d.asDiagonal() * u.transpose());
  auto bb = std::make_shared<Vector>(b);
  auto solver = std::make_shared<Eigen::LDLT<Matrix>>(*q);

  ProblemInstance p;
  p.name = "quadratic";
  p.seed = seed;
  p.objective.dim = dim;
  p.objective.value = [q, bb](const Vector& x) { return 0.5 * x.dot(*q * x) - bb->dot(x); };
  p.objective.gradient = [q, bb](const Vector& x) { return (*q * x - *bb).eval(); };
  p.objective.smoothness_L = *std::max_element(spectrum.begin(), spectrum.end());
  p.objective.strong_convexity_mu = *std::min_element(spectrum.begin(), spectrum.end());
  p.objective.analytic_conjugate = [solver, bb](const Vector& y) {
    Vector z = solver->solve(y + *bb);
    return 0.5 * (y + *bb).dot(z);
  };
  Vector x_star = solver->solve(b);
  p.objective.min_value = -0.5 * b.dot(x_star);
  p.objective.minimizer = std::move(x_star);
  p.set = make_unconstrained(dim);
  return p;
}

inline ProblemInstance make_quadratic_kappa(int dim, double kappa, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  Vector b = detail::gaussian_vector(rng, dim);
  return make_quadratic(dim, detail::log_spaced_spectrum(dim, kappa), b, seed);
}

/// f(x) = tau * log sum_i exp(<a_i, x>/tau - c_i). Smooth and non-quadratic,
/// with L bounded by max_i ||a_i||^2 / tau. No analytic conjugate; a
/// reference optimum can be attached after a long accelerated run.
inline ProblemInstance make_logsumexp(int dim, const std::vector<Vector>& anchors,
                                      const std::vector<double>& offsets, double temperature) {
  if (anchors.empty() || anchors.size() != offsets.size()) {
    throw Error("make_logsumexp: anchors/offsets mismatch");
  }
  auto a = std::make_shared<std::vector<Vector>>(anchors);
  auto c = std::make_shared<std::vector<double>>(offsets);
  const double tau = temperature;
  auto scores = [a, c, tau](const Vector& x) {
    Vector s(static_cast<int>(a->size()));
    for (size_t i = 0; i < a->size(); ++i) {
      s[static_cast<int>(i)] = (*a)[i].dot(x) / tau - (*c)[i];
    }
    return s;
  };

  ProblemInstance p;
  p.name = "logsumexp";
  p.objective.dim = dim;
  p.objective.value = [scores, tau](const Vector& x) {
    Vector s = scores(x);
    double m = s.maxCoeff();
    return tau * (m + std::log((s.array() - m).exp().sum()));
  };
  p.objective.gradient = [scores, a, dim](const Vector& x) {
    Vector s = scores(x);
    double m = s.maxCoeff();
    Vector w = (s.array() - m).exp();
    w /= w.sum();
    Vector g = Vector::Zero(dim);
    for (size_t i = 0; i < a->size(); ++i) g += w[static_cast<int>(i)] * (*a)[i];
    return g;
  };
  double max_sq = 0.0;
  for (const Vector& ai : anchors) max_sq = std::max(max_sq, ai.squaredNorm());
  p.objective.smoothness_L = max_sq / tau;
  p.set = make_unconstrained(dim);
  return p;
}

inline ProblemInstance make_logsumexp_random(int dim, int m, double tau, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> anchors;
  std::vector<double> offsets;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  anchors.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) anchors.push_back(detail::gaussian_vector(rng, dim, 1.0 / std::sqrt(dim)));
  offsets.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) offsets.push_back(unif(rng));
  ProblemInstance p = make_logsumexp(dim, anchors, offsets, tau);
  p.seed = seed;
  return p;
}

/// Diagonal quadratic plus l1: coordinate-wise soft thresholding gives the
/// exact composite minimizer.
inline ProblemInstance make_l1_diag_quadratic(int dim, const Vector& q, const Vector& b,
                                              double lambda) {
  ProblemInstance p;
  p.name = "l1_diag_quadratic";
  auto qs = std::make_shared<Vector>(q);
  auto bs = std::make_shared<Vector>(b);
  p.objective.dim = dim;
  p.objective.value = [qs, bs](const Vector& x) {
    return 0.5 * (qs->array() * (x - *bs).array().square()).sum();
  };
  p.objective.gradient = [qs, bs](const Vector& x) {
    return (qs->array() * (x - *bs).array()).matrix().eval();
  };
  p.objective.smoothness_L = q.maxCoeff();
  p.objective.strong_convexity_mu = q.minCoeff();
  p.psi = l1_term(lambda);
  Vector x_star(dim);
  for (int i = 0; i < dim; ++i) x_star[i] = soft_threshold(b[i], lambda / q[i]);
  p.objective.min_value = 0.5 * (q.array() * (x_star - b).array().square()).sum();
  p.objective.minimizer = std::move(x_star);
  p.set = make_unconstrained(dim);
  return p;
}

/// The 1-D lasso f(x) = (x-3)^2/2 with psi = lambda|x|.
inline ProblemInstance make_lasso_1d(double lambda) {
  Vector q(1), b(1);
  q[0] = 1.0;
  b[0] = 3.0;
  ProblemInstance p = make_l1_diag_quadratic(1, q, b, lambda);
  p.name = "lasso1d";
  return p;
}

/// Rotated quadratic plus l1; no closed-form composite minimizer, so the
/// reference for this one comes from a long proximal run.
inline ProblemInstance make_l1_rotated_quadratic(int dim, double kappa, double lambda,
                                                 std::uint64_t seed) {
  ProblemInstance p = make_quadratic_kappa(dim, kappa, seed);
  p.name = "l1_quadratic";
  p.seed = seed;
  p.psi = l1_term(lambda);
  p.objective.minimizer.reset();  // the smooth minimizer is not the composite one
  p.objective.min_value.reset();
  return p;
}

/// Quadratic restricted to an L2 ball. The optimum is interior when the
/// unconstrained solution fits, otherwise it solves the boundary stationarity
/// condition (Q + lam I) x = b with ||x|| = r, found by bisection on lam.
inline ProblemInstance make_ball_quadratic(int dim, double kappa, double radius, bool bind,
                                           std::uint64_t seed) {
  ProblemInstance p = make_quadratic_kappa(dim, kappa, seed);
  p.name = "ball_quadratic";
  const Vector x_unc = *p.objective.minimizer;
  const double n = x_unc.norm();
  // Rescale b so the unconstrained optimum lands clearly inside or outside.
  const double target = bind ? 2.0 * radius : 0.5 * radius;
  const double scale = target / n;
  Vector b_old = -p.objective.gradient(Vector::Zero(dim));
  Vector b = scale * b_old;
  std::vector<double> spectrum = detail::log_spaced_spectrum(dim, kappa);
  p = make_quadratic(dim, spectrum, b, seed);
  p.name = "ball_quadratic";
  p.set = make_ball_set(dim, 2.0, radius);

  if (!bind) {
    // interior optimum, already stored
    return p;
  }
  // Boundary case: ||(Q + lam I)^{-1} b|| is decreasing in lam >= 0.
  Matrix q(dim, dim);
  {
    std::mt19937_64 rng(seed);
    Matrix u = detail::random_orthogonal(rng, dim);
    Vector d = Eigen::Map<const Vector>(spectrum.data(), dim);
    q = u * d.asDiagonal() * u.transpose();
  }
  auto norm_at = [&](double lam) {
    Matrix shifted = q + lam * Matrix::Identity(dim, dim);
    return Vector(shifted.ldlt().solve(b)).norm();
  };
  double lo = 0.0, hi = 1.0;
  while (norm_at(hi) > radius) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (norm_at(mid) > radius ? lo : hi) = mid;
    if (hi - lo < 1e-15 * (1.0 + hi)) break;
  }
  const double lam = 0.5 * (lo + hi);
  Vector x_star = (q + lam * Matrix::Identity(dim, dim)).ldlt().solve(b);
  p.objective.min_value = 0.5 * x_star.dot(q * x_star) - b.dot(x_star);
  p.objective.minimizer = std::move(x_star);
  return p;
}

/// Best-effort reference optimum: the optimistic accelerated method (its
/// proximal form when a composite term is present) run for `T` rounds, taking
/// the best averaged iterate seen. Returns (point, total objective value).
inline std::pair<Vector, double> compute_reference(const Objective& f, const FeasibleSet& set,
                                                   const CompositeTerm* psi, const Vector& x0, int T) {
  const double gamma = 1.0 / (4.0 * f.smoothness_L);
  Vector x_prev = x0, xbar_prev = x0;
  double A_prev = 0.0;
  Vector best_x = x0;
  double best_val = f.value(x0) + (psi != nullptr ? psi->value(x0) : 0.0);
  for (int t = 1; t <= T; ++t) {
    const double alpha = static_cast<double>(t);
    const double A = A_prev + alpha;
    Vector xtilde = hint_shifted_average(A_prev, xbar_prev, alpha, x_prev);
    Vector y = f.gradient(xtilde);
    Vector x;
    if (psi != nullptr) {
      x = psi->prox(x_prev - gamma * (alpha * y), alpha * gamma);
    } else {
      x = set.bregman_project(x_prev, alpha * y, gamma);
    }
    Vector xbar = weighted_average_step(A_prev, xbar_prev, alpha, x);
    const double val = f.value(xbar) + (psi != nullptr ? psi->value(xbar) : 0.0);
    if (val < best_val) {
      best_val = val;
      best_x = xbar;
    }
    x_prev = std::move(x);
    xbar_prev = std::move(xbar);
    A_prev = A;
  }
  return {std::move(best_x), best_val};
}

/// Named problem construction for config-driven runs. Unknown names and
/// unknown parameter keys are hard errors.
inline ProblemInstance build_problem(const std::string& name,
                                     const std::map<std::string, std::string>& params) {
  auto get = [&params](const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto geti = [&](const std::string& key, int fallback) {
    return std::stoi(get(key, std::to_string(fallback)));
  };
  auto getd = [&](const std::string& key, double fallback) {
    return std::stod(get(key, std::to_string(fallback)));
  };
  auto getu = [&](const std::string& key, std::uint64_t fallback) {
    return static_cast<std::uint64_t>(std::stoull(get(key, std::to_string(fallback))));
  };
  auto check_keys = [&params, &name](std::initializer_list<const char*> allowed) {
    for (const auto& kv : params) {
      bool ok = false;
      for (const char* k : allowed) {
        if (kv.first == k) {
          ok = true;
          break;
        }
      }
      if (!ok) throw ConfigError("problem '" + name + "': unknown parameter '" + kv.first + "'");
    }
  };

  if (name == "quadratic") {
    check_keys({"name", "dim", "kappa", "seed"});
    return make_quadratic_kappa(geti("dim", 10), getd("kappa", 10.0), getu("seed", 0));
  }
  if (name == "logsumexp") {
    check_keys({"name", "dim", "terms", "tau", "seed"});
    return make_logsumexp_random(geti("dim", 10), geti("terms", 40), getd("tau", 1.0), getu("seed", 0));
  }
  if (name == "lasso1d") {
    check_keys({"name", "lambda"});
    return make_lasso_1d(getd("lambda", 1.0));
  }
  if (name == "l1_quadratic") {
    check_keys({"name", "dim", "kappa", "lambda", "seed"});
    return make_l1_rotated_quadratic(geti("dim", 10), getd("kappa", 10.0), getd("lambda", 0.1),
                                     getu("seed", 0));
  }
  if (name == "l1_diag") {
    check_keys({"name", "dim", "kappa", "lambda", "seed"});
    const int dim = geti("dim", 10);
    std::mt19937_64 rng(getu("seed", 0));
    Vector q = Eigen::Map<const Vector>(detail::log_spaced_spectrum(dim, getd("kappa", 10.0)).data(), dim);
    Vector b = detail::gaussian_vector(rng, dim);
    return make_l1_diag_quadratic(dim, q, b, getd("lambda", 0.1));
  }
  if (name == "ball_quadratic") {
    check_keys({"name", "dim", "kappa", "radius", "bind", "seed"});
    const std::string bind = get("bind", "outside");
    if (bind != "inside" && bind != "outside") {
      throw ConfigError("ball_quadratic: bind must be 'inside' or 'outside'");
    }
    return make_ball_quadratic(geti("dim", 10), getd("kappa", 10.0), getd("radius", 1.0),
                               bind == "outside", getu("seed", 0));
  }
  throw ConfigError("unknown problem name '" + name + "'");
}

}  // namespace fengame

#endif  // FENGAME_PROBLEMS_HPP_
