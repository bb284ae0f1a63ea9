// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/config.hpp"
#include "sfq/table.hpp"

#include <string>
#include <vector>

namespace sfq {

struct ScenarioResult {
  std::vector<ResultTable> tables;

  const ResultTable& table(const std::string& name) const;
};

ScenarioResult run_fig1c(const ScenarioConfig& sc);
ScenarioResult run_fig2(const ScenarioConfig& sc);
ScenarioResult run_fig3b(const ScenarioConfig& sc);
ScenarioResult run_fig3c(const ScenarioConfig& sc);
ScenarioResult run_validation_sm_s1(const ScenarioConfig& sc);
ScenarioResult run_sm_s2(const ScenarioConfig& sc);
ScenarioResult run_feasibility(const ScenarioConfig& sc);
ScenarioResult run_sweep(const ScenarioConfig& sc);

/// Dispatch by scenario name (one of scenario_names()).
ScenarioResult run_scenario(const std::string& name, const ScenarioConfig& sc);

/// One-line description per scenario, for the CLI listing.
std::string scenario_description(const std::string& name);

/// Thread count for parallel sections: SFQSIM_WORKERS if set, otherwise the
/// hardware concurrency.
int worker_count();

}  // namespace sfq
