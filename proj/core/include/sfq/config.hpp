// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/model.hpp"
#include "sfq/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sfq {

/// Flat `key = value` configuration with dotted section prefixes. Lines
/// starting with '#' are comments. Unknown keys are rejected against the
/// schema at validation time.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  void set(const std::string& key, const std::string& value);

  const std::map<std::string, std::string>& entries() const { return values_; }
  std::string canonical_text() const;  // sorted "key = value" lines
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> values_;
};

struct SweepAxis {
  std::string variable;  // a ModelParams field, e.g. "model.kerr"
  double min = 0.0;
  double max = 0.0;
  int points = 1;
  bool log_scale = false;

  double value(int i) const;
};

/// Parsed scenario request: the scenario name, the physical model, protocol
/// knobs kept in raw form (scenario runners pull what they need), and sweep
/// axes for the generic sweep scenario.
struct ScenarioConfig {
  std::string scenario;
  ModelParams model;
  Config raw;
  std::vector<SweepAxis> sweep_axes;
  std::vector<std::string> sweep_observables;
  int output_precision = 17;

  double protocol_double(const std::string& name, double fallback) const;
  int protocol_int(const std::string& name, int fallback) const;
};

/// Validates keys against the schema and materializes the scenario request.
/// Throws ConfigError on unknown keys, malformed values, or a missing or
/// unrecognized scenario name.
ScenarioConfig load_scenario_config(const Config& cfg);

/// Known scenario names, in execution-menu order.
const std::vector<std::string>& scenario_names();

/// All schema keys (for documentation and validation).
std::vector<std::string> config_schema_keys();

}  // namespace sfq
