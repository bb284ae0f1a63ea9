// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/config.hpp"

#include "sfq/table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sfq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& schema() {
  static const std::set<std::string> keys = {
      "scenario",
      // physical model
      "model.omega_a", "model.kerr", "model.gamma0", "model.omega_p", "model.drive_amp",
      "model.theta", "model.mass", "model.dim",
      // protocol knobs (scenario runners pull what applies)
      "protocol.r", "protocol.omega_b_target", "protocol.omega_d", "protocol.omega_pi2",
      "protocol.omega_v", "protocol.t_max", "protocol.n_times", "protocol.dim_b",
      "protocol.dim_embed", "protocol.omega_f_over_omega_b", "protocol.n_grid_k",
      "protocol.n_grid_r", "protocol.k_min_over_gamma0", "protocol.k_max_over_gamma0",
      "protocol.k_min_over_omega_b", "protocol.k_max_over_omega_b", "protocol.r_min",
      "protocol.r_max", "protocol.n_r", "protocol.temperature",
      // phase-space window for emitted fields
      "grid.re_min", "grid.re_max", "grid.im_min", "grid.im_max", "grid.n_re", "grid.n_im",
      // generic sweep
      "sweep.observables",
      // output and validation
      "output.precision", "rwa.threshold"};
  return keys;
}

bool is_sweep_axis_key(const std::string& key, int* axis, std::string* field) {
  // sweep.axisN.{variable,min,max,points,scale}, N in 1..4
  if (key.rfind("sweep.axis", 0) != 0) return false;
  const auto rest = key.substr(10);
  const auto dot = rest.find('.');
  if (dot == std::string::npos || dot == 0) return false;
  const std::string num = rest.substr(0, dot);
  const std::string f = rest.substr(dot + 1);
  if (num.size() != 1 || num[0] < '1' || num[0] > '4') return false;
  if (f != "variable" && f != "min" && f != "max" && f != "points" && f != "scale") return false;
  if (axis) *axis = num[0] - '0';
  if (field) *field = f;
  return true;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (cfg.values_.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

double Config::get_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not a number: " + it->second);
  }
  if (pos != it->second.size())
    throw ConfigError("config: key '" + key + "' has trailing characters: " + it->second);
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key);
  const int i = int(std::llround(v));
  if (std::abs(v - i) > 1e-9) throw ConfigError("config: key '" + key + "' must be an integer");
  return i;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string Config::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

std::uint64_t Config::hash() const { return fnv1a_hash(canonical_text()); }

double SweepAxis::value(int i) const {
  if (points < 1) throw ConfigError("sweep axis: points must be >= 1");
  if (points == 1) return min;
  const double f = double(i) / double(points - 1);
  if (log_scale) {
    if (min <= 0.0 || max <= 0.0) throw ConfigError("sweep axis: log scale requires positive bounds");
    return min * std::pow(max / min, f);
  }
  return min + (max - min) * f;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"fig1c", "fig2",        "fig3b", "fig3c",
                                                 "sm-s1", "sm-s2",       "feasibility", "sweep"};
  return names;
}

std::vector<std::string> config_schema_keys() {
  std::vector<std::string> keys(schema().begin(), schema().end());
  for (int n = 1; n <= 4; ++n)
    for (const char* f : {"variable", "min", "max", "points", "scale"})
      keys.push_back("sweep.axis" + std::to_string(n) + "." + f);
  std::sort(keys.begin(), keys.end());
  return keys;
}

double ScenarioConfig::protocol_double(const std::string& name, double fallback) const {
  return raw.get_double("protocol." + name, fallback);
}

int ScenarioConfig::protocol_int(const std::string& name, int fallback) const {
  return raw.get_int("protocol." + name, fallback);
}

ScenarioConfig load_scenario_config(const Config& cfg) {
  for (const auto& [key, value] : cfg.entries()) {
    (void)value;
    if (schema().count(key)) continue;
    if (is_sweep_axis_key(key, nullptr, nullptr)) continue;
    throw ConfigError("config: unknown key '" + key + "'");
  }

  ScenarioConfig sc;
  sc.raw = cfg;
  sc.scenario = cfg.get_string("scenario", "");
  if (!sc.scenario.empty()) {
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), sc.scenario) == names.end())
      throw ConfigError("config: unrecognized scenario '" + sc.scenario + "'");
  }

  // baseline model: a 600 MHz resonator with K/2pi = gamma0/2pi = 3 kHz,
  // undriven unless the config sets the pump explicitly
  ModelParams m;
  m.omega_a = 2.0 * consts::pi * 600e6;
  m.kerr = 2.0 * consts::pi * 3e3;
  m.gamma0 = 2.0 * consts::pi * 3e3;
  m.omega_p = 0.0;
  m.drive_amp = 0.0;
  m.theta = consts::pi;
  m.mass = 1e-21;
  m.dim = 64;
  m.omega_a = cfg.get_double("model.omega_a", m.omega_a);
  m.kerr = cfg.get_double("model.kerr", m.kerr);
  m.gamma0 = cfg.get_double("model.gamma0", m.gamma0);
  m.omega_p = cfg.get_double("model.omega_p", m.omega_p);
  m.drive_amp = cfg.get_double("model.drive_amp", m.drive_amp);
  m.theta = cfg.get_double("model.theta", m.theta);
  m.mass = cfg.get_double("model.mass", m.mass);
  m.dim = cfg.get_int("model.dim", m.dim);
  sc.model = m;

  // sweep axes in axis index order
  for (int n = 1; n <= 4; ++n) {
    const std::string base = "sweep.axis" + std::to_string(n) + ".";
    if (!cfg.has(base + "variable")) continue;
    SweepAxis ax;
    ax.variable = cfg.get_string(base + "variable", "");
    ax.min = cfg.get_double(base + "min");
    ax.max = cfg.get_double(base + "max");
    ax.points = cfg.get_int(base + "points", 1);
    const std::string scale = cfg.get_string(base + "scale", "linear");
    if (scale == "log")
      ax.log_scale = true;
    else if (scale == "linear")
      ax.log_scale = false;
    else
      throw ConfigError("config: sweep scale must be 'linear' or 'log'");
    if (ax.points < 1) throw ConfigError("config: sweep points must be >= 1");
    sc.sweep_axes.push_back(std::move(ax));
  }

  const std::string obs = cfg.get_string("sweep.observables", "");
  if (!obs.empty()) {
    std::stringstream ss(obs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) sc.sweep_observables.push_back(item);
    }
  }

  sc.output_precision = cfg.get_int("output.precision", 17);
  if (sc.output_precision < 6 || sc.output_precision > 17)
    throw ConfigError("config: output.precision must lie in [6, 17]");
  return sc;
}

}  // namespace sfq
