// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/config.hpp"
#include "sfq/scenarios.hpp"
#include "sfq/sensing.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

// exit codes: 0 ok, 2 config error, 3 numerical nonconvergence,
// 4 truncation guard failure
constexpr int kExitConfig = 2;
constexpr int kExitNonconvergent = 3;
constexpr int kExitTruncation = 4;

int run_command(const std::string& scenario_flag, const std::string& config_path,
                const std::string& out_dir) {
  sfq::Config cfg =
      config_path.empty() ? sfq::Config{} : sfq::Config::parse_file(config_path);
  sfq::ScenarioConfig sc = sfq::load_scenario_config(cfg);
  const std::string scenario = scenario_flag.empty() ? sc.scenario : scenario_flag;
  if (scenario.empty())
    throw sfq::ConfigError("no scenario given: pass --scenario or set 'scenario' in the config");

  std::filesystem::create_directories(out_dir);
  const sfq::ScenarioResult res = sfq::run_scenario(scenario, sc);
  for (const auto& table : res.tables) {
    const auto path = std::filesystem::path(out_dir) / (table.name() + ".csv");
    table.write_csv_file(path.string());
    std::cout << "wrote " << path.string() << " (" << table.rows() << " rows)\n";
  }
  return 0;
}

int validate_command(const std::string& config_path) {
  sfq::Config cfg = sfq::Config::parse_file(config_path);
  sfq::ScenarioConfig sc = sfq::load_scenario_config(cfg);
  std::cout << "config ok";
  if (!sc.scenario.empty()) std::cout << " (scenario " << sc.scenario << ")";
  std::cout << ", hash " << std::hex << cfg.hash() << std::dec << "\n";

  if (sc.model.drive_amp != 0.0) {
    const double threshold = cfg.get_double("rwa.threshold", 0.05);
    const sfq::RwaReport rep = sfq::rwa_report(sc.model, threshold);
    std::cout << "rwa ratios:";
    for (double v : rep.ratios) std::cout << " " << v;
    std::cout << "  threshold " << rep.threshold << "  -> "
              << (rep.pass() ? "PASS" : "FAIL") << "\n";
  } else {
    std::cout << "no two-phonon drive configured; rwa report skipped\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driven Kerr-resonator qubit simulation toolkit"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_dir = "out";

  auto* run = app.add_subcommand("run", "run a scenario and write CSV tables");
  run->add_option("--scenario", scenario, "scenario name (see list-scenarios)");
  run->add_option("--config", config_path, "configuration file");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config and print the RWA report");
  validate->add_option("--config", validate_path, "configuration file")->required();

  auto* list = app.add_subcommand("list-scenarios", "list scenario names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(scenario, config_path, out_dir);
    if (validate->parsed()) return validate_command(validate_path);
    if (list->parsed()) {
      for (const auto& name : sfq::scenario_names())
        std::cout << name << "  -  " << sfq::scenario_description(name) << "\n";
      return 0;
    }
  } catch (const sfq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sfq::ConvergenceError& e) {
    std::cerr << "nonconvergent integration: " << e.what() << "\n";
    return kExitNonconvergent;
  } catch (const sfq::TruncationError& e) {
    std::cerr << "truncation too small: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
