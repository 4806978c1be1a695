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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupnav/policy.hpp"
#include "groupnav/sim.hpp"
#include "groupnav/vec2.hpp"

namespace groupnav::bench {

struct HumanSample {
  int id = 0;
  Vec2 pos;
  Vec2 vel;

  friend bool operator==(const HumanSample&, const HumanSample&) = default;
};

struct GroupSample {
  int group_id = 0;
  Vec2 centroid;
  double radius = 0.0;

  friend bool operator==(const GroupSample&, const GroupSample&) = default;
};

/// Snapshot after step t (t = 0 is the initial state). taga_mode is the mode
/// that chose the action leading into this state.
struct StepRecord {
  int t = 0;
  Vec2 robot_pos;
  Vec2 robot_vel;
  TagaMode taga_mode = TagaMode::Inactive;
  bool inside_group = false;
  std::vector<HumanSample> humans;
  std::vector<GroupSample> groups;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpisodeReport {
  std::uint64_t seed = 0;
  sim::EpisodeOutcome outcome;
  double nav_time = 0.0;     // s
  double path_length = 0.0;  // m
  double gcr_fraction = 0.0;

  friend bool operator==(const EpisodeReport&, const EpisodeReport&) = default;
};

struct BenchmarkSummary {
  double sr = 0.0;
  double cr = 0.0;
  double gcr = 0.0;
  double tr = 0.0;
  std::optional<double> mean_nt;  // absent when no episode succeeded
  std::optional<double> mean_pl;
  int n_episodes = 0;
};

class EmptyTrace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyReportList : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EpisodeRun {
  EpisodeReport report;
  std::vector<StepRecord> steps;          // t = 0 .. terminal_step
  std::vector<sim::GroupState> groups;    // membership at t = 0
};

/// Fraction of records whose robot position lies strictly inside a group disk.
inline double gcr_fraction(std::span<const StepRecord> steps) {
  if (steps.empty()) {
    throw EmptyTrace("gcr_fraction: empty trace");
  }
  std::size_t inside = 0;
  for (const StepRecord& s : steps) {
    inside += s.inside_group ? 1 : 0;
  }
  return static_cast<double>(inside) / static_cast<double>(steps.size());
}

inline StepRecord snapshot(const sim::WorldState& world, TagaMode mode) {
  StepRecord rec;
  rec.t = world.time_step;
  rec.robot_pos = world.robot.position;
  rec.robot_vel = world.robot.velocity;
  rec.taga_mode = mode;
  rec.inside_group = sim::inside_any_group(world.robot.position, world.groups);
  rec.humans.reserve(world.humans.size());
  for (const AgentState& h : world.humans) {
    rec.humans.push_back({h.id, h.position, h.velocity});
  }
  for (const sim::GroupState& g : world.groups) {
    rec.groups.push_back({g.group_id, g.centroid, g.radius});
  }
  return rec;
}

/// Runs one episode: observe, act, step until an outcome is produced.
///
/// nav_time = terminal_step * dt; path_length sums the robot's per-step
/// displacements; gcr_fraction is the inside-group fraction over steps 1..T.
inline EpisodeRun run_episode(sim::WorldState world, const sim::ScenarioConfig& config,
                              Policy& policy, std::uint64_t seed) {
  policy.reset();

  EpisodeRun run;
  run.groups = world.groups;
  run.steps.push_back(snapshot(world, TagaMode::Inactive));

  std::optional<sim::EpisodeOutcome> outcome;
  double path = 0.0;
  while (!outcome) {
    const Vec2 action = policy.act(sim::observe(world, config));
    const Vec2 before = world.robot.position;
    auto result = sim::step_world(std::move(world), action, config);
    world = std::move(result.world);
    outcome = result.outcome;
    path += distance(before, world.robot.position);
    run.steps.push_back(snapshot(world, policy.mode()));
  }

  run.report.seed = seed;
  run.report.outcome = *outcome;
  run.report.nav_time = outcome->terminal_step * config.dt;
  run.report.path_length = path;
  run.report.gcr_fraction = gcr_fraction(std::span(run.steps).subspan(1));
  return run;
}

inline EpisodeRun run_episode(const sim::ScenarioConfig& config, Policy& policy,
                              std::uint64_t seed) {
  return run_episode(sim::generate_scenario(config, seed), config, policy, seed);
}

/// Outcome rates over all episodes; NT and PL average successful episodes only.
inline BenchmarkSummary aggregate(std::span<const EpisodeReport> reports) {
  if (reports.empty()) {
    throw EmptyReportList("aggregate: no episode reports");
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  double nt = 0.0;
  double pl = 0.0;
  for (const EpisodeReport& r : reports) {
    ++counts[static_cast<int>(r.outcome.kind)];
    if (r.outcome.kind == sim::OutcomeKind::Success) {
      nt += r.nav_time;
      pl += r.path_length;
    }
  }
  const auto total = static_cast<double>(reports.size());
  BenchmarkSummary s;
  s.n_episodes = static_cast<int>(reports.size());
  s.sr = static_cast<double>(counts[static_cast<int>(sim::OutcomeKind::Success)]) / total;
  s.cr = static_cast<double>(counts[static_cast<int>(sim::OutcomeKind::Collision)]) / total;
  s.gcr = static_cast<double>(counts[static_cast<int>(sim::OutcomeKind::GroupCollision)]) / total;
  s.tr = static_cast<double>(counts[static_cast<int>(sim::OutcomeKind::Timeout)]) / total;
  if (const auto successes = counts[static_cast<int>(sim::OutcomeKind::Success)]; successes > 0) {
    s.mean_nt = nt / static_cast<double>(successes);
    s.mean_pl = pl / static_cast<double>(successes);
  }
  return s;
}

}  // namespace groupnav::bench
