#ifndef FENGAME_EXPERIMENT_HPP_
#define FENGAME_EXPERIMENT_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fengame/audit.hpp"
#include "fengame/config.hpp"
#include "fengame/engine.hpp"
#include "fengame/problems.hpp"
#include "fengame/rate.hpp"

namespace fengame {

inline std::string format_g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Resolved method: strategies plus step-size choices derived from the
/// problem's constants.
struct MethodSpec {
  std::string name;
  YStrategy y = YStrategy::OFTL;
  XStrategy x = XStrategy::OGD;
  std::string gamma_kind = "corollary";  // corollary | nesterov83 | custom
  double gamma_value = 0.0;              // for custom
  double eta = -1.0;                     // <0 means 1/(4L)
  bool linear_rate = false;

  bool gamma_is_constant() const { return gamma_kind != "nesterov83"; }
};

inline MethodSpec resolve_method(const ExperimentConfig& cfg) {
  MethodSpec m;
  m.name = cfg.method_name;
  const std::string& n = cfg.method_name;
  if (n == "accelerated") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::OGD;
  } else if (n == "nesterov83") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::OGD;
    m.gamma_kind = "nesterov83";
  } else if (n == "heavy_ball") {
    m.y = YStrategy::FTL;
    m.x = XStrategy::OGD;
  } else if (n == "nesterov_1mem") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::MirrorDescent;
  } else if (n == "nesterov_infmem") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::BTRL;
  } else if (n == "accel_prox") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::ProxMD;
  } else if (n == "accel_fw") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::FWGauge;
  } else if (n == "linear_rate") {
    m.y = YStrategy::OFTL;
    m.x = XStrategy::StronglyConvexBTL;
    m.linear_rate = true;
  } else if (n == "game") {
    if (cfg.method_y == "oftl") {
      m.y = YStrategy::OFTL;
    } else if (cfg.method_y == "ftl") {
      m.y = YStrategy::FTL;
    } else {
      throw ConfigError("game method needs y = oftl|ftl");
    }
    if (cfg.method_x == "mirror_descent") {
      m.x = XStrategy::MirrorDescent;
    } else if (cfg.method_x == "ogd") {
      m.x = XStrategy::OGD;
    } else if (cfg.method_x == "btrl") {
      m.x = XStrategy::BTRL;
    } else if (cfg.method_x == "prox_md") {
      m.x = XStrategy::ProxMD;
    } else if (cfg.method_x == "sc_btl") {
      m.x = XStrategy::StronglyConvexBTL;
      m.linear_rate = true;
    } else if (cfg.method_x == "fw_gauge") {
      m.x = XStrategy::FWGauge;
    } else {
      throw ConfigError("game method needs x = mirror_descent|ogd|btrl|prox_md|sc_btl|fw_gauge");
    }
  } else {
    throw ConfigError("unknown method '" + n + "'");
  }
  if (!cfg.gamma_spec.empty()) {
    if (cfg.gamma_spec == "corollary" || cfg.gamma_spec == "nesterov83") {
      m.gamma_kind = cfg.gamma_spec;
    } else {
      m.gamma_kind = "custom";
      m.gamma_value = std::stod(cfg.gamma_spec);
      if (!(m.gamma_value > 0.0)) throw ConfigError("gamma must be positive");
    }
  }
  m.eta = cfg.eta_override;
  return m;
}

inline GameSpec build_game_spec(const ProblemInstance& p, const MethodSpec& m, int T,
                                const std::string& x0_spec, double alpha0) {
  GameSpec spec;
  spec.objective = p.objective;
  spec.set = p.set;
  spec.y_strategy = m.y;
  spec.x_strategy = m.x;
  spec.rounds_T = T;
  spec.composite_psi = p.psi;
  if (m.x != XStrategy::ProxMD) spec.composite_psi.reset();

  const double L = p.objective.smoothness_L;
  if (m.gamma_kind == "corollary") {
    spec.learner_config = corollary_config(L);
  } else if (m.gamma_kind == "nesterov83") {
    spec.learner_config = nesterov83_config(L);
  } else {
    spec.learner_config = corollary_config(L);
    const double g = m.gamma_value;
    spec.learner_config.gamma = [g](int) { return g; };
  }
  if (m.eta > 0.0) spec.learner_config.eta = m.eta;

  if (m.linear_rate) {
    if (!(p.objective.strong_convexity_mu > 0.0)) {
      throw RequiresStrongConvexity("linear-rate method needs a strongly convex objective");
    }
    spec.schedule = WeightSchedule::exponential(L / p.objective.strong_convexity_mu, alpha0);
  }
  spec.start_x0 = x0_spec == "ones" ? Vector::Ones(p.objective.dim) : Vector::Zero(p.objective.dim);
  return spec;
}

inline GameTrace run_method(const GameSpec& spec) {
  return spec.x_strategy == XStrategy::StronglyConvexBTL ? run_linear_rate_game(spec)
                                                         : run_game(spec);
}

/// Certificates applicable to a finished run, given how it was played. The
/// start-point divergence bound is only sound for a constant step on an
/// unconstrained run; everything else tracks the running maximum.
inline std::vector<Certificate> certify_run(const GameTrace& tr, const GameSpec& spec,
                                            const Vector& x_star, double f_star_total,
                                            bool constrained, bool gamma_constant = true) {
  std::vector<Certificate> out;
  const Objective& f = spec.objective;
  const CompositeTerm* psi = spec.composite_psi ? &*spec.composite_psi : nullptr;
  out.push_back(certify_equilibrium(tr, f, x_star, f_star_total, psi));
  if (spec.y_strategy == YStrategy::OFTL) {
    out.push_back(certify_oftl_smoothness(tr, f));
  } else {
    out.push_back(certify_ftl_strong_convexity(tr, f));
  }
  const auto dmode = (!constrained && gamma_constant) ? DivergenceBoundMode::from_start
                                                      : DivergenceBoundMode::running_max;
  switch (spec.x_strategy) {
    case XStrategy::MirrorDescent:
    case XStrategy::OGD:
    case XStrategy::ProxMD: {
      const auto geom = euclidean_geometry();
      out.push_back(
          certify_mirror_descent(tr, geom, spec.learner_config.gamma, x_star, dmode, psi));
      if (spec.y_strategy == YStrategy::OFTL) {
        out.push_back(certify_weighted_rate(tr, f, geom, spec.learner_config.gamma, x_star,
                                            f_star_total, dmode, psi));
      }
      break;
    }
    case XStrategy::BTRL: {
      Regularizer reg = spec.learner_config.regularizer.argmin
                            ? spec.learner_config.regularizer
                            : half_squared_norm_regularizer(spec.set);
      out.push_back(certify_btrl(tr, reg, spec.learner_config.eta, x_star));
      break;
    }
    case XStrategy::FWGauge: {
      out.push_back(certify_btrl(tr, gauge_squared_regularizer(spec.set),
                                 spec.learner_config.eta, x_star));
      break;
    }
    case XStrategy::StronglyConvexBTL:
      out.push_back(certify_btl_strong_convexity(tr, x_star));
      break;
  }
  return out;
}

inline void write_trace_csv(const std::string& path, const GameTrace& tr, const AuditSeries& series) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file '" + path + "'");
  out << "t,alpha_t,A_t,f_xbar,gap,regret_x,regret_y,eps_bound\n";
  for (int i = 0; i < tr.rounds_completed(); ++i) {
    const Round& r = tr.rounds[static_cast<size_t>(i)];
    const double total = r.f_xbar + (tr.game == GameTrace::Game::composite ? r.psi_xbar : 0.0);
    out << r.t << ',' << format_g17(r.alpha) << ',' << format_g17(r.A) << ',' << format_g17(total)
        << ',' << format_g17(series.gap[static_cast<size_t>(i)]) << ','
        << format_g17(series.regret_x[static_cast<size_t>(i)]) << ','
        << format_g17(series.regret_y[static_cast<size_t>(i)]) << ','
        << format_g17(series.eps_bound[static_cast<size_t>(i)]) << '\n';
  }
}

struct RunArtifacts {
  int T = 0;
  double gap = 0.0;
  std::vector<Certificate> certificates;
  bool all_pass = true;
};

/// Runs every round count in the config, writes one trace CSV per run plus a
/// combined certificate report and a summary table. Returns the artifacts in
/// round order; throws on configuration errors before touching the disk.
inline std::vector<RunArtifacts> run_experiment(const ExperimentConfig& cfg,
                                                const std::string& out_root) {
  const MethodSpec method = resolve_method(cfg);
  const ProblemInstance problem = build_problem(cfg.problem_params.at("name"), cfg.problem_params);

  // Reference optimum: analytic when available, otherwise a long run of the
  // accelerated method (50x the largest requested round count).
  int T_max = 0;
  for (int T : cfg.rounds) T_max = std::max(T_max, T);
  Vector x_star;
  double f_star_total = 0.0;
  bool reference_exact = true;
  if (problem.has_optimum()) {
    x_star = *problem.objective.minimizer;
    f_star_total = problem.optimum_total();
  } else {
    reference_exact = false;
    Vector x0 = cfg.x0_spec == "ones" ? Vector::Ones(problem.objective.dim)
                                      : Vector::Zero(problem.objective.dim);
    auto ref = compute_reference(problem.objective, problem.set,
                                 problem.psi ? &*problem.psi : nullptr, x0, 50 * T_max);
    x_star = ref.first;
    f_star_total = ref.second;
  }
  const bool constrained = problem.set.has_gauge();

  struct OneRun {
    RunArtifacts art;
    GameTrace trace;
    AuditSeries series;
  };
  std::vector<std::future<OneRun>> futures;
  futures.reserve(cfg.rounds.size());
  for (int T : cfg.rounds) {
    futures.push_back(std::async(std::launch::async, [&, T]() {
      OneRun run;
      GameSpec spec = build_game_spec(problem, method, T, cfg.x0_spec, cfg.alpha0);
      run.trace = run_method(spec);
      const CompositeTerm* psi = spec.composite_psi ? &*spec.composite_psi : nullptr;
      run.series = audit_series(run.trace, spec.objective, x_star, f_star_total, psi);
      run.art.T = T;
      run.art.gap = duality_gap_of(run.trace, spec.objective, psi,
                                   std::make_optional(std::make_pair(x_star, f_star_total)));
      run.art.certificates = certify_run(run.trace, spec, x_star, f_star_total, constrained,
                                         method.gamma_is_constant());
      for (const Certificate& c : run.art.certificates) run.art.all_pass &= c.pass;
      return run;
    }));
  }
  std::vector<OneRun> runs;
  runs.reserve(futures.size());
  for (auto& f : futures) runs.push_back(f.get());

  namespace fs = std::filesystem;
  const fs::path dir = fs::path(out_root) / cfg.output;
  fs::create_directories(dir);

  std::vector<std::pair<double, double>> gap_points;
  for (const OneRun& run : runs) {
    gap_points.emplace_back(static_cast<double>(run.art.T), run.art.gap);
  }
  std::string slope_text = "";
  if (gap_points.size() >= 3) {
    try {
      slope_text = format_g17(fit_rate_slope(gap_points).slope);
    } catch (const DegenerateFit&) {
      slope_text = "exact";
    }
  }

  nlohmann::json cert_report = nlohmann::json::array();
  std::ofstream summary(dir / "summary.csv");
  summary << "method,T,gap,slope\n";
  std::vector<RunArtifacts> artifacts;
  for (const OneRun& run : runs) {
    write_trace_csv((dir / ("trace_T" + std::to_string(run.art.T) + ".csv")).string(), run.trace,
                    run.series);
    summary << method.name << ',' << run.art.T << ',' << format_g17(run.art.gap) << ','
            << slope_text << '\n';
    nlohmann::json entry;
    entry["T"] = run.art.T;
    entry["reference_exact"] = reference_exact;
    entry["certificates"] = nlohmann::json::array();
    for (const Certificate& c : run.art.certificates) {
      entry["certificates"].push_back({{"name", c.name},
                                       {"measured", c.measured},
                                       {"bound", c.bound},
                                       {"slack", c.slack},
                                       {"pass", c.pass},
                                       {"statement", c.statement}});
    }
    cert_report.push_back(entry);
    artifacts.push_back(run.art);
  }
  summary.close();
  std::ofstream certs(dir / "certificates.json");
  certs << cert_report.dump(2) << '\n';
  return artifacts;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream ss(line);
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace detail

/// Re-checks the persisted accounting of a trace file: at every round the
/// recorded gap must sit below the recorded equilibrium bound. Returns the
/// number of violated rows.
inline int certify_trace_csv(const std::string& path, std::ostream& log) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("empty trace file '" + path + "'");
  if (line != "t,alpha_t,A_t,f_xbar,gap,regret_x,regret_y,eps_bound") {
    throw Error("unexpected trace header in '" + path + "'");
  }
  int violations = 0, rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = detail::split_csv_line(line);
    if (cols.size() != 8) throw Error("malformed trace row: " + line);
    ++rows;
    const double gap = std::stod(cols[4]);
    const double eps = std::stod(cols[7]);
    const bool ok = gap <= eps + Certificate::kRelTol * (1.0 + std::abs(eps));
    if (!ok) {
      ++violations;
      log << "round " << cols[0] << ": gap " << cols[4] << " exceeds bound " << cols[7] << "\n";
    }
  }
  log << path << ": " << rows << " rounds, " << violations << " violations\n";
  return violations;
}

/// Fits log-log rate slopes per method from a summary table with columns
/// method,T,gap[,...]. Prints one line per method.
inline int slope_summary_csv(const std::string& path, std::ostream& log) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open summary file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("empty summary file '" + path + "'");
  auto header = detail::split_csv_line(line);
  if (header.size() < 3 || header[0] != "method" || header[1] != "T" || header[2] != "gap") {
    throw Error("unexpected summary header in '" + path + "'");
  }
  std::map<std::string, std::vector<std::pair<double, double>>> groups;
  std::vector<std::string> order;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = detail::split_csv_line(line);
    if (cols.size() < 3) throw Error("malformed summary row: " + line);
    if (groups.count(cols[0]) == 0) order.push_back(cols[0]);
    groups[cols[0]].emplace_back(std::stod(cols[1]), std::stod(cols[2]));
  }
  for (const std::string& method : order) {
    try {
      RateFit fit = fit_rate_slope(groups[method]);
      log << method << ": slope " << format_g17(fit.slope) << " intercept "
          << format_g17(fit.intercept) << " r2 " << format_g17(fit.r2) << "\n";
    } catch (const DegenerateFit&) {
      log << method << ": exact (gap at machine precision)\n";
    }
  }
  return 0;
}

}  // namespace fengame

#endif  // FENGAME_EXPERIMENT_HPP_
