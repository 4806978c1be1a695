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

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "groupnav/bench.hpp"
#include "groupnav/config_file.hpp"
#include "groupnav/policy.hpp"
#include "groupnav/taga.hpp"
#include "groupnav/trace.hpp"

namespace groupnav::bench {

/// Builds one of "orca", "sf", "orca+taga", "sf+taga".
inline std::unique_ptr<Policy> make_policy(const std::string& name, const SuiteConfig& c) {
  const double dt = c.scenario.dt;
  if (name == "orca") {
    return std::make_unique<FunctionPolicy>("orca", make_orca_policy(c.robot_orca_tau, dt));
  }
  if (name == "sf") {
    return std::make_unique<FunctionPolicy>("sf", make_sf_policy(c.sf, dt));
  }
  if (name == "orca+taga") {
    return std::make_unique<taga::TagaPolicy>(
        taga::wrap_policy("orca", make_orca_policy(c.robot_orca_tau, dt), c.taga));
  }
  if (name == "sf+taga") {
    return std::make_unique<taga::TagaPolicy>(
        taga::wrap_policy("sf", make_sf_policy(c.sf, dt), c.taga));
  }
  throw sim::InvalidConfig("unknown policy '" + name + "'");
}

struct CellResult {
  std::string policy;
  std::vector<EpisodeReport> reports;
  BenchmarkSummary summary;
};

/// Called once per finished episode; traces are only kept alive this long.
using EpisodeSink = std::function<void(const std::string& policy, const EpisodeRun&)>;

/// Runs every policy cell on the same seeds scenario.seed .. scenario.seed + episodes - 1.
///
/// A PlacementFailure aborts the whole run; its message names the seed.
inline std::vector<CellResult> run_cells(const SuiteConfig& suite, const EpisodeSink& sink = {}) {
  validate(suite);
  if (suite.episodes == 0) {
    throw EmptyReportList("run_cells: suite has zero episodes");
  }
  std::vector<CellResult> cells;
  for (const std::string& name : suite.policies) {
    auto policy = make_policy(name, suite);
    CellResult cell;
    cell.policy = name;
    for (int i = 0; i < suite.episodes; ++i) {
      const std::uint64_t seed = suite.scenario.seed + static_cast<std::uint64_t>(i);
      EpisodeRun run = run_episode(suite.scenario, *policy, seed);
      if (sink) {
        sink(name, run);
      }
      cell.reports.push_back(run.report);
    }
    cell.summary = aggregate(cell.reports);
    cells.push_back(std::move(cell));
  }
  return cells;
}

/// Summary table: config echo as '#' comment lines, then model,SR,CR,GCR,TR,NT,PL.
inline std::string format_summary(const SuiteConfig& suite, const std::vector<CellResult>& cells) {
  std::ostringstream out;
  for (const auto& [key, value] : to_key_values(suite)) {
    out << "# " << key << " = " << value << '\n';
  }
  out << "model,SR,CR,GCR,TR,NT,PL\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("NA"); };
  for (const CellResult& c : cells) {
    const BenchmarkSummary& s = c.summary;
    out << c.policy << ',' << format_double(s.sr) << ',' << format_double(s.cr) << ','
        << format_double(s.gcr) << ',' << format_double(s.tr) << ',' << opt(s.mean_nt) << ','
        << opt(s.mean_pl) << '\n';
  }
  return out.str();
}

/// Per-episode table; gcr_fraction is the time-fraction rate of each episode.
inline std::string format_episodes(const std::vector<CellResult>& cells) {
  std::ostringstream out;
  out << "model,seed,outcome,terminal_step,nav_time,path_length,gcr_fraction\n";
  for (const CellResult& c : cells) {
    for (const EpisodeReport& r : c.reports) {
      out << c.policy << ',' << r.seed << ',' << to_string(r.outcome.kind) << ','
          << r.outcome.terminal_step << ',' << format_double(r.nav_time) << ','
          << format_double(r.path_length) << ',' << format_double(r.gcr_fraction) << '\n';
    }
  }
  return out.str();
}

inline std::string trace_file_name(const std::string& policy, std::uint64_t seed) {
  return policy + "_seed" + std::to_string(seed) + ".jsonl";
}

/// Full benchmark: writes summary.csv, episodes.csv and traces/<policy>_seed<N>.jsonl
/// under out_dir. Returns the per-cell results.
inline std::vector<CellResult> run_benchmark(const SuiteConfig& suite,
                                             const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "traces");
  auto cells = run_cells(suite, [&](const std::string& policy, const EpisodeRun& run) {
    std::ofstream trace(out_dir / "traces" / trace_file_name(policy, run.report.seed));
    write_trace(trace, policy, suite, run);
  });
  std::ofstream(out_dir / "summary.csv") << format_summary(suite, cells);
  std::ofstream(out_dir / "episodes.csv") << format_episodes(cells);
  return cells;
}

}  // namespace groupnav::bench
