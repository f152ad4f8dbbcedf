// Batch experiment runner for the game-dynamics optimizer: runs configs,
// re-checks persisted traces, and fits rate slopes from summary tables.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fengame/fengame.hpp"

namespace {

std::string output_root() {
  const char* env = std::getenv("FENGAME_OUT");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

int cmd_run(const std::string& config_path) {
  using namespace fengame;
  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_ini(IniFile::parse_file(config_path));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    auto artifacts = run_experiment(cfg, output_root());
    bool all_pass = true;
    for (const RunArtifacts& a : artifacts) {
      std::cout << cfg.method_name << " T=" << a.T << " gap=" << format_g17(a.gap);
      for (const Certificate& c : a.certificates) {
        std::cout << ' ' << c.name << '=' << (c.pass ? "pass" : "FAIL");
        all_pass &= c.pass;
      }
      std::cout << '\n';
    }
    return all_pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_certify(const std::string& trace_path) {
  try {
    return fengame::certify_trace_csv(trace_path, std::cout) == 0 ? 0 : 1;
  } catch (const fengame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_slope(const std::string& summary_path) {
  try {
    return fengame::slope_summary_csv(summary_path, std::cout);
  } catch (const fengame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"no-regret game dynamics optimizer"};
  app.require_subcommand(1);

  std::string config_path, trace_path, summary_path;
  CLI::App* run = app.add_subcommand("run", "run every round count in a config file");
  run->add_option("config", config_path, "experiment config (key = value sections)")->required();
  CLI::App* certify = app.add_subcommand("certify", "re-check the accounting in a trace CSV");
  certify->add_option("trace", trace_path, "trace CSV written by 'run'")->required();
  CLI::App* slope = app.add_subcommand("slope", "fit log-log rate slopes from a summary CSV");
  slope->add_option("summary", summary_path, "summary CSV written by 'run'")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path);
  if (certify->parsed()) return cmd_certify(trace_path);
  if (slope->parsed()) return cmd_slope(summary_path);
  return 2;
}
