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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groupnav/agent.hpp"
#include "groupnav/orca.hpp"
#include "groupnav/rng.hpp"
#include "groupnav/vec2.hpp"

namespace groupnav::sim {

struct ScenarioConfig {
  double arena_half_extent = 6.0;  // 12 m x 12 m
  /// When positive, individuals fill the crowd up to this many humans and
  /// n_individuals is ignored.
  int total_humans = 20;
  int n_individuals = 10;
  int n_groups = 3;
  int group_size_min = 3;
  int group_size_max = 4;
  double static_group_fraction = 0.5;
  double dt = 0.25;
  int max_steps = 197;
  double sensor_range = 5.0;
  double human_radius = 0.3;
  double robot_radius = 0.3;
  double pref_speed = 1.0;
  double cohesion_k = 1.0;
  double goal_radius = 0.3;
  bool terminate_on_group_intrusion = true;
  /// Human ORCA horizon and neighbor cutoff.
  double orca_tau = 2.0;
  double neighbor_dist = 5.0;
  /// Members are drawn inside a disk of this radius around the group's center.
  double group_spread = 1.2;
  /// Minimum center distance between two members of the same group.
  double member_spacing = 1.0;
  /// Minimum gap between the spread disks of two groups at placement.
  double group_clearance = 2.5;
  std::uint64_t seed = 0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PlacementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidConfig naming the first offending field.
inline void validate(const ScenarioConfig& c) {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) {
      throw InvalidConfig("invalid scenario config: " + std::string(what));
    }
  };
  require(c.arena_half_extent > 0.0, "arena_half_extent must be > 0");
  require(c.dt > 0.0, "dt must be > 0");
  require(c.max_steps > 0, "max_steps must be > 0");
  require(c.sensor_range > 0.0, "sensor_range must be > 0");
  require(c.human_radius > 0.0, "human_radius must be > 0");
  require(c.robot_radius > 0.0, "robot_radius must be > 0");
  require(c.pref_speed > 0.0, "pref_speed must be > 0");
  require(c.cohesion_k >= 0.0, "cohesion_k must be >= 0");
  require(c.goal_radius > 0.0, "goal_radius must be > 0");
  require(c.orca_tau > 0.0, "orca_tau must be > 0");
  require(c.neighbor_dist > 0.0, "neighbor_dist must be > 0");
  require(c.group_spread > 0.0, "group_spread must be > 0");
  require(c.group_clearance >= 0.0, "group_clearance must be >= 0");
  require(c.member_spacing >= 0.0, "member_spacing must be >= 0");
  require(c.n_groups >= 0, "n_groups must be >= 0");
  require(c.n_individuals >= 0, "n_individuals must be >= 0");
  require(c.total_humans >= 0, "total_humans must be >= 0");
  require(c.group_size_min >= 2, "group_size_min must be >= 2");
  require(c.group_size_max >= c.group_size_min, "group_size_max must be >= group_size_min");
  require(c.static_group_fraction >= 0.0 && c.static_group_fraction <= 1.0,
          "static_group_fraction must lie in [0, 1]");
  require(c.total_humans == 0 || c.total_humans >= c.n_groups * c.group_size_max,
          "total_humans cannot hold n_groups groups of group_size_max members");
}

enum class GroupKind { Static, Dynamic };

/// Group boundary tuple: centroid, radius, members, id.
struct GroupState {
  int group_id = 0;
  Vec2 centroid;
  double radius = 0.0;
  int member_count = 0;
  std::vector<int> member_ids;  // ascending
  GroupKind kind = GroupKind::Static;
  std::optional<int> leader_id;

  friend bool operator==(const GroupState&, const GroupState&) = default;
};

/// Full simulator state. humans[i].id == i + 1; the robot has id 0.
struct WorldState {
  int time_step = 0;
  AgentState robot;
  std::vector<AgentState> humans;
  std::vector<GroupState> groups;
  Rng rng;

  const AgentState& human(int id) const { return humans.at(static_cast<std::size_t>(id - 1)); }
  AgentState& human(int id) { return humans.at(static_cast<std::size_t>(id - 1)); }

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// What the robot perceives: itself, its goal, and humans inside sensor range.
/// Group membership is deliberately absent.
struct WorldObservation {
  AgentState robot;
  std::vector<AgentState> visible_humans;  // ascending id
  Vec2 goal;
};

enum class OutcomeKind { Success, Collision, GroupCollision, Timeout };

constexpr std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Success: return "Success";
    case OutcomeKind::Collision: return "Collision";
    case OutcomeKind::GroupCollision: return "GroupCollision";
    case OutcomeKind::Timeout: return "Timeout";
  }
  return "?";
}

struct EpisodeOutcome {
  OutcomeKind kind = OutcomeKind::Timeout;
  int terminal_step = 0;

  friend bool operator==(const EpisodeOutcome&, const EpisodeOutcome&) = default;
};

/// Mean position and the largest member distance from it.
inline std::pair<Vec2, double> group_centroid_radius(std::span<const Vec2> positions) {
  if (positions.empty()) {
    throw EmptyGroup("group_centroid_radius: no member positions");
  }
  Vec2 sum;
  for (const Vec2& p : positions) {
    sum += p;
  }
  const Vec2 centroid = sum / static_cast<double>(positions.size());
  double radius = 0.0;
  for (const Vec2& p : positions) {
    radius = std::max(radius, distance(p, centroid));
  }
  return {centroid, radius};
}

/// Cohesion rule for a follower: leader velocity plus k times the offset to
/// the centroid. Callers clamp the result to the follower's preferred speed.
constexpr Vec2 follower_velocity(const Vec2& v_leader, const Vec2& centroid, const Vec2& p_i,
                                 double k) {
  return v_leader + (centroid - p_i) * k;
}

/// Recomputes centroid and radius of every group from its members' positions.
inline void refresh_groups(WorldState& world) {
  std::vector<Vec2> positions;
  for (GroupState& g : world.groups) {
    positions.clear();
    for (int id : g.member_ids) {
      positions.push_back(world.human(id).position);
    }
    std::tie(g.centroid, g.radius) = group_centroid_radius(positions);
  }
}

inline bool inside_any_group(const Vec2& p, std::span<const GroupState> groups) {
  return std::any_of(groups.begin(), groups.end(), [&](const GroupState& g) {
    return distance(p, g.centroid) < g.radius;
  });
}

namespace detail {

inline constexpr int kMaxPlacementAttempts = 10'000;

inline Vec2 random_point(Rng& rng, double half_extent, double margin) {
  const double lim = half_extent - margin;
  return {rng.uniform(-lim, lim), rng.uniform(-lim, lim)};
}

inline Vec2 preferred_velocity(const AgentState& a) {
  return normalized(a.goal - a.position) * a.pref_speed;
}

}  // namespace detail

/// Builds the initial world for `seed`.
///
/// Robot at (0, -0.75 H) heading for (0, +0.75 H). Groups are placed first
/// (members drawn inside config.group_spread of a random center), then
/// individuals. Agents never overlap (center distance >= sum of radii + 0.1 m)
/// and nobody starts inside a group disk it does not belong to. Moving humans
/// start at their preferred velocity.
inline WorldState generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  validate(config);
  WorldState world;
  world.rng = Rng(seed);
  Rng& rng = world.rng;
  const double half = config.arena_half_extent;
  const double hr = config.human_radius;
  constexpr double kGap = 0.1;

  world.robot = AgentState{.id = 0,
                           .position = {0.0, -0.75 * half},
                           .velocity = {},
                           .radius = config.robot_radius,
                           .goal = {0.0, 0.75 * half},
                           .pref_speed = config.pref_speed,
                           .role = Role::Robot};

  int attempts = 0;
  auto spend_attempt = [&] {
    if (++attempts > detail::kMaxPlacementAttempts) {
      throw PlacementFailure("generate_scenario: no valid placement after " +
                             std::to_string(detail::kMaxPlacementAttempts) +
                             " attempts (seed " + std::to_string(seed) + ")");
    }
  };
  auto overlaps = [&](const Vec2& p, double radius) {
    if (distance(p, world.robot.position) < radius + world.robot.radius + kGap) {
      return true;
    }
    return std::any_of(world.humans.begin(), world.humans.end(), [&](const AgentState& h) {
      return distance(p, h.position) < radius + h.radius + kGap;
    });
  };
  auto add_human = [&](const Vec2& p, Role role) -> AgentState& {
    AgentState h;
    h.id = static_cast<int>(world.humans.size()) + 1;
    h.position = p;
    h.radius = hr;
    h.goal = p;
    h.pref_speed = config.pref_speed;
    h.role = role;
    world.humans.push_back(h);
    return world.humans.back();
  };

  // Group centers keep their disks clear of the robot's start and goal, and of
  // each other by a margin that keeps neighboring groups from touching.
  const double spread = config.group_spread;
  const double center_margin = spread + hr;
  std::vector<Vec2> centers;
  for (int g = 0; g < config.n_groups; ++g) {
    const bool is_static = rng.bernoulli(config.static_group_fraction);
    const int size = rng.uniform_int(config.group_size_min, config.group_size_max);

    Vec2 center;
    for (;;) {
      spend_attempt();
      center = detail::random_point(rng, half, center_margin);
      const double clear = spread + config.robot_radius + 0.5;
      if (distance(center, world.robot.position) < clear ||
          distance(center, world.robot.goal) < clear) {
        continue;
      }
      const bool crowded = std::any_of(centers.begin(), centers.end(), [&](const Vec2& c) {
        return distance(c, center) < 2.0 * spread + config.group_clearance;
      });
      if (!crowded) {
        break;
      }
    }
    centers.push_back(center);

    GroupState group;
    group.group_id = g;
    group.kind = is_static ? GroupKind::Static : GroupKind::Dynamic;
    // A member set that paints itself into a corner is redrawn from scratch.
    std::vector<Vec2> placed;
    int misses = 0;
    while (static_cast<int>(placed.size()) < size) {
      spend_attempt();
      const Vec2 p = rng.in_disk(center, spread);
      const bool too_close = std::any_of(placed.begin(), placed.end(), [&](const Vec2& q) {
        return distance(p, q) < std::max(config.member_spacing, 2.0 * hr + kGap);
      });
      if (too_close || overlaps(p, hr)) {
        if (++misses > 50) {
          placed.clear();
          misses = 0;
        }
        continue;
      }
      placed.push_back(p);
      misses = 0;
    }
    for (const Vec2& p : placed) {
      const AgentState& h =
          add_human(p, is_static ? Role::StaticGroupMember : Role::GroupFollower);
      group.member_ids.push_back(h.id);
    }
    group.member_count = size;
    world.groups.push_back(std::move(group));
  }
  refresh_groups(world);

  const int group_members = static_cast<int>(world.humans.size());
  const int n_individuals =
      config.total_humans > 0 ? config.total_humans - group_members : config.n_individuals;
  for (int i = 0; i < n_individuals; ++i) {
    Vec2 p;
    for (;;) {
      spend_attempt();
      p = detail::random_point(rng, half, hr);
      if (overlaps(p, hr)) {
        continue;
      }
      const bool in_group =
          std::any_of(world.groups.begin(), world.groups.end(), [&](const GroupState& g) {
            return distance(p, g.centroid) < g.radius + hr + kGap;
          });
      if (!in_group) {
        break;
      }
    }
    AgentState& h = add_human(p, Role::Individual);
    h.goal = detail::random_point(rng, half, hr);
    h.velocity = detail::preferred_velocity(h);
  }

  for (GroupState& g : world.groups) {
    if (g.kind == GroupKind::Static) {
      continue;
    }
    const int leader = g.member_ids[static_cast<std::size_t>(
        rng.uniform_int(0, g.member_count - 1))];
    g.leader_id = leader;
    const Vec2 goal = detail::random_point(rng, half, hr);
    for (int id : g.member_ids) {
      world.human(id).goal = goal;
    }
    AgentState& lead = world.human(leader);
    lead.role = Role::GroupLeader;
    lead.velocity = detail::preferred_velocity(lead);
    for (int id : g.member_ids) {
      if (id != leader) {
        AgentState& f = world.human(id);
        f.velocity = clamp_norm(
            follower_velocity(lead.velocity, g.centroid, f.position, config.cohesion_k),
            f.pref_speed);
      }
    }
  }
  return world;
}

/// Humans inside sensor range of the robot, ascending id.
inline WorldObservation observe(const WorldState& world, const ScenarioConfig& config) {
  WorldObservation obs;
  obs.robot = world.robot;
  obs.goal = world.robot.goal;
  for (const AgentState& h : world.humans) {
    if (distance(h.position, world.robot.position) <= config.sensor_range) {
      obs.visible_humans.push_back(h);
    }
  }
  return obs;
}

struct StepResult {
  WorldState world;
  std::optional<EpisodeOutcome> outcome;
};

/// Terminal classification of `world` right after a step, in priority order
/// Collision > GroupCollision > Success > Timeout.
inline std::optional<EpisodeOutcome> classify(const WorldState& world,
                                              const ScenarioConfig& config) {
  const AgentState& robot = world.robot;
  const int t = world.time_step;
  for (const AgentState& h : world.humans) {
    if (distance(robot.position, h.position) < robot.radius + h.radius) {
      return EpisodeOutcome{OutcomeKind::Collision, t};
    }
  }
  if (config.terminate_on_group_intrusion && inside_any_group(robot.position, world.groups)) {
    return EpisodeOutcome{OutcomeKind::GroupCollision, t};
  }
  if (distance(robot.position, robot.goal) < config.goal_radius) {
    return EpisodeOutcome{OutcomeKind::Success, t};
  }
  if (t >= config.max_steps) {
    return EpisodeOutcome{OutcomeKind::Timeout, t};
  }
  return std::nullopt;
}

/// Advances the world by one step of config.dt.
///
/// Individuals and dynamic-group leaders run ORCA against individuals and
/// leaders only: other group members are transparent and the robot is
/// invisible to humans. Followers apply the cohesion rule, static members
/// stand still. Humans that reach their goal draw a fresh one.
inline StepResult step_world(WorldState world, const Vec2& robot_action,
                             const ScenarioConfig& config) {
  if (!is_finite(robot_action)) {
    throw std::invalid_argument("step_world: robot action is not finite");
  }

  const std::size_t n = world.humans.size();
  std::vector<Vec2> next_vel(n);
  std::vector<AgentState> neighbors;
  for (std::size_t i = 0; i < n; ++i) {
    const AgentState& self = world.humans[i];
    if (self.role != Role::Individual && self.role != Role::GroupLeader) {
      continue;
    }
    neighbors.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const AgentState& other = world.humans[j];
      if (j == i || (other.role != Role::Individual && other.role != Role::GroupLeader)) {
        continue;
      }
      if (distance(self.position, other.position) <= config.neighbor_dist) {
        neighbors.push_back(other);
      }
    }
    next_vel[i] = orca::orca_velocity(self, neighbors, detail::preferred_velocity(self),
                                      config.orca_tau, config.dt, self.pref_speed);
  }

  for (const GroupState& g : world.groups) {
    if (g.kind != GroupKind::Dynamic) {
      continue;
    }
    const Vec2 v_leader = next_vel[static_cast<std::size_t>(*g.leader_id - 1)];
    for (int id : g.member_ids) {
      if (id == *g.leader_id) {
        continue;
      }
      const AgentState& f = world.human(id);
      next_vel[static_cast<std::size_t>(id - 1)] = clamp_norm(
          follower_velocity(v_leader, g.centroid, f.position, config.cohesion_k), f.pref_speed);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    AgentState& h = world.humans[i];
    h.velocity = next_vel[i];
    h.position += h.velocity * config.dt;
  }
  world.robot.velocity = clamp_norm(robot_action, world.robot.pref_speed);
  world.robot.position += world.robot.velocity * config.dt;

  const double half = config.arena_half_extent;
  for (AgentState& h : world.humans) {
    if (h.role == Role::Individual && distance(h.position, h.goal) < config.goal_radius) {
      h.goal = detail::random_point(world.rng, half, config.human_radius);
    }
  }
  for (const GroupState& g : world.groups) {
    if (g.kind != GroupKind::Dynamic) {
      continue;
    }
    const AgentState& lead = world.human(*g.leader_id);
    if (distance(lead.position, lead.goal) < config.goal_radius) {
      const Vec2 goal = detail::random_point(world.rng, half, config.human_radius);
      for (int id : g.member_ids) {
        world.human(id).goal = goal;
      }
    }
  }

  refresh_groups(world);
  ++world.time_step;
  std::optional<EpisodeOutcome> outcome = classify(world, config);
  return {std::move(world), outcome};
}

}  // namespace groupnav::sim
