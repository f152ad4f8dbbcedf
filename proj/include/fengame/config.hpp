#ifndef FENGAME_CONFIG_HPP_
#define FENGAME_CONFIG_HPP_

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fengame/core.hpp"

namespace fengame {

/// Minimal sectioned key = value format. '#' and ';' start comments, blank
/// lines are skipped, keys keep the line number for diagnostics.
struct IniFile {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, std::map<std::string, Entry>> sections;

  static IniFile parse_string(const std::string& text) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
      ++lineno;
      size_t hash = line.find_first_of("#;");
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
        }
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
        ini.sections[section];
        continue;
      }
      size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
      }
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
      }
      auto& sec = ini.sections[section];
      if (sec.count(key) != 0) {
        throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      }
      sec[key] = Entry{value, lineno};
    }
    return ini;
  }

  static IniFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
  }
};

/// One batch entry: a problem, a method, a schedule and the list of round
/// counts to run. Built from an IniFile with full schema validation.
struct ExperimentConfig {
  std::map<std::string, std::string> problem_params;  // includes "name"
  std::string method_name;
  std::string method_y, method_x;  // for method_name == "game"
  std::string gamma_spec;          // "corollary", "nesterov83" or a number
  double eta_override = -1.0;
  std::string schedule_kind = "linear";
  double alpha0 = 1.0;
  std::vector<int> rounds;
  std::string output;
  std::string x0_spec = "zero";  // zero | ones

  static ExperimentConfig from_ini(const IniFile& ini);
};

inline ExperimentConfig ExperimentConfig::from_ini(const IniFile& ini) {
  ExperimentConfig cfg;
  for (const auto& [sec, _] : ini.sections) {
    if (sec != "problem" && sec != "method" && sec != "schedule" && sec != "run") {
      throw ConfigError("unknown section [" + sec + "]");
    }
  }
  auto require_section = [&](const std::string& name) -> const std::map<std::string, IniFile::Entry>& {
    auto it = ini.sections.find(name);
    if (it == ini.sections.end()) throw ConfigError("missing section [" + name + "]");
    return it->second;
  };

  const auto& prob = require_section("problem");
  if (prob.count("name") == 0) throw ConfigError("[problem] needs a 'name' key");
  for (const auto& [k, v] : prob) cfg.problem_params[k] = v.value;

  const auto& method = require_section("method");
  for (const auto& [k, v] : method) {
    if (k == "name") {
      cfg.method_name = v.value;
    } else if (k == "y") {
      cfg.method_y = v.value;
    } else if (k == "x") {
      cfg.method_x = v.value;
    } else if (k == "gamma") {
      cfg.gamma_spec = v.value;
    } else if (k == "eta") {
      cfg.eta_override = std::stod(v.value);
    } else {
      throw ConfigError("line " + std::to_string(v.line) + ": unknown [method] key '" + k + "'");
    }
  }
  if (cfg.method_name.empty()) throw ConfigError("[method] needs a 'name' key");

  if (ini.sections.count("schedule") != 0) {
    for (const auto& [k, v] : ini.sections.at("schedule")) {
      if (k == "kind") {
        cfg.schedule_kind = v.value;
      } else if (k == "alpha0") {
        cfg.alpha0 = std::stod(v.value);
      } else {
        throw ConfigError("line " + std::to_string(v.line) + ": unknown [schedule] key '" + k + "'");
      }
    }
    if (cfg.schedule_kind != "linear" && cfg.schedule_kind != "constant" &&
        cfg.schedule_kind != "exponential") {
      throw ConfigError("[schedule] kind must be linear, constant or exponential");
    }
  }

  const auto& run = require_section("run");
  for (const auto& [k, v] : run) {
    if (k == "rounds") {
      std::istringstream ss(v.value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        int T = std::stoi(tok);
        if (T < 1) throw ConfigError("line " + std::to_string(v.line) + ": rounds must be positive");
        cfg.rounds.push_back(T);
      }
    } else if (k == "output") {
      cfg.output = v.value;
    } else if (k == "x0") {
      if (v.value != "zero" && v.value != "ones") {
        throw ConfigError("line " + std::to_string(v.line) + ": x0 must be 'zero' or 'ones'");
      }
      cfg.x0_spec = v.value;
    } else {
      throw ConfigError("line " + std::to_string(v.line) + ": unknown [run] key '" + k + "'");
    }
  }
  if (cfg.rounds.empty()) throw ConfigError("[run] needs a nonempty 'rounds' list");
  if (cfg.output.empty()) throw ConfigError("[run] needs an 'output' name");
  return cfg;
}

}  // namespace fengame

#endif  // FENGAME_CONFIG_HPP_
