/*
 * Copyright 2026 The groupnav Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "groupnav/groupnav.hpp"

namespace {

constexpr int kExitInvalidConfig = 1;
constexpr int kExitPlacementFailure = 2;
constexpr int kExitValidationFailure = 3;

using groupnav::bench::SuiteConfig;

int cmd_run(const std::string& suite_path, const std::string& out_dir) {
  const SuiteConfig suite = groupnav::bench::load_suite(suite_path);
  const auto cells = groupnav::bench::run_benchmark(suite, out_dir);
  std::cout << groupnav::bench::format_summary(suite, cells);
  return 0;
}

int cmd_episode(const std::string& config_path, const std::string& policy, bool use_taga,
                std::uint64_t seed, bool no_group_termination, const std::string& trace_path) {
  SuiteConfig suite = config_path.empty() ? SuiteConfig{} : groupnav::bench::load_suite(config_path);
  if (no_group_termination) {
    suite.scenario.terminate_on_group_intrusion = false;
  }
  const std::string name = use_taga ? policy + "+taga" : policy;
  suite.policies = {name};
  groupnav::bench::validate(suite);

  auto agent = groupnav::bench::make_policy(name, suite);
  const auto run = groupnav::bench::run_episode(suite.scenario, *agent, seed);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    groupnav::bench::write_trace(out, name, suite, run);
  }
  const auto& r = run.report;
  std::cout << "policy=" << name << " seed=" << r.seed
            << " outcome=" << groupnav::sim::to_string(r.outcome.kind)
            << " terminal_step=" << r.outcome.terminal_step
            << " nav_time=" << groupnav::bench::format_double(r.nav_time)
            << " path_length=" << groupnav::bench::format_double(r.path_length)
            << " gcr_fraction=" << groupnav::bench::format_double(r.gcr_fraction) << '\n';
  return 0;
}

int cmd_validate(const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "cannot open trace '" << trace_path << "'\n";
    return kExitValidationFailure;
  }
  const auto result = groupnav::bench::validate_trace(in);
  for (const auto& e : result.errors) {
    std::cerr << e << '\n';
  }
  if (!result.ok()) {
    return kExitValidationFailure;
  }
  std::cout << "ok: " << result.steps << " step records\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowd navigation benchmark with tangent-based group avoidance"};
  app.require_subcommand(1);

  std::string suite_path;
  std::string out_dir = "bench_out";
  auto* run = app.add_subcommand("run", "Run every policy cell of a suite");
  run->add_option("--suite", suite_path, "Suite config file (key = value)")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string policy;
  bool use_taga = false;
  std::uint64_t seed = 0;
  bool no_group_termination = false;
  std::string config_path;
  std::string trace_path;
  auto* episode = app.add_subcommand("episode", "Run a single episode");
  episode->add_option("--policy", policy, "Base policy")
      ->required()
      ->check(CLI::IsMember({"orca", "sf"}));
  episode->add_flag("--taga", use_taga, "Wrap the base policy with group avoidance");
  episode->add_option("--seed", seed, "Scenario seed")->required();
  episode->add_flag("--no-group-termination", no_group_termination,
                    "Keep running after the robot enters a group disk");
  episode->add_option("--config", config_path, "Config file overriding defaults");
  episode->add_option("--trace", trace_path, "Write the episode trace here");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Re-check the invariants of a trace file");
  validate->add_option("--trace", validate_path, "Trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  }

  try {
    if (*run) {
      return cmd_run(suite_path, out_dir);
    }
    if (*episode) {
      return cmd_episode(config_path, policy, use_taga, seed, no_group_termination, trace_path);
    }
    return cmd_validate(validate_path);
  } catch (const groupnav::sim::InvalidConfig& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const groupnav::bench::EmptyReportList& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const groupnav::sim::PlacementFailure& e) {
    std::cerr << e.what() << '\n';
    return kExitPlacementFailure;
  }
}
