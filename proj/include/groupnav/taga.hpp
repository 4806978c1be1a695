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
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupnav/geometry.hpp"
#include "groupnav/policy.hpp"
#include "groupnav/sim.hpp"

// Tangent-based group avoidance: group detection from raw observations, the
// tangent subgoal action, and the switching wrapper around a base policy.
namespace groupnav::taga {

struct DetectedGroup {
  Vec2 centroid;
  double radius = 0.0;
  std::vector<int> member_ids;  // ascending
  Vec2 mean_velocity;

  geom::Disk disk() const { return {centroid, radius}; }

  friend bool operator==(const DetectedGroup&, const DetectedGroup&) = default;
};

struct TagaConfig {
  double d_safe = 0.8;           // boundary inflation, m
  double cluster_eps = 1.8;      // linking distance, m
  double velocity_tol = 0.3;     // linking velocity difference, m/s
  int min_group_size = 3;
  double detection_range = 2.5;  // m

  friend bool operator==(const TagaConfig&, const TagaConfig&) = default;
};

inline void validate(const TagaConfig& c) {
  if (!(c.d_safe > 0.0 && c.cluster_eps > 0.0 && c.velocity_tol > 0.0 &&
        c.detection_range > 0.0 && c.min_group_size >= 2)) {
    throw sim::InvalidConfig(
        "invalid taga config: lengths and tolerances must be > 0, min_group_size >= 2");
  }
}

struct TagaState {
  std::optional<DetectedGroup> active_group;

  TagaMode mode() const { return active_group ? TagaMode::Avoiding : TagaMode::Inactive; }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  // The smaller root wins so the representative is order independent.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[std::max(a, b)] = std::min(a, b);
    }
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Single-linkage clustering of the visible humans.
///
/// Two humans link when they are within cfg.cluster_eps of each other and their
/// velocities differ by at most cfg.velocity_tol. Components with at least
/// cfg.min_group_size members are groups; the result is ordered by centroid
/// distance from the robot (ties broken by smallest member id).
inline std::vector<DetectedGroup> detect_groups(const sim::WorldObservation& obs,
                                                const TagaConfig& cfg) {
  const auto& humans = obs.visible_humans;
  const std::size_t n = humans.size();
  detail::DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(humans[i].position, humans[j].position) <= cfg.cluster_eps &&
          distance(humans[i].velocity, humans[j].velocity) <= cfg.velocity_tol) {
        sets.unite(i, j);
      }
    }
  }

  std::vector<std::vector<std::size_t>> components(n);
  for (std::size_t i = 0; i < n; ++i) {
    components[sets.find(i)].push_back(i);
  }

  std::vector<DetectedGroup> groups;
  std::vector<Vec2> positions;
  for (const auto& members : components) {
    if (members.size() < static_cast<std::size_t>(cfg.min_group_size)) {
      continue;
    }
    DetectedGroup g;
    positions.clear();
    Vec2 velocity_sum;
    for (std::size_t idx : members) {
      positions.push_back(humans[idx].position);
      velocity_sum += humans[idx].velocity;
      g.member_ids.push_back(humans[idx].id);
    }
    std::sort(g.member_ids.begin(), g.member_ids.end());
    std::tie(g.centroid, g.radius) = sim::group_centroid_radius(positions);
    g.mean_velocity = velocity_sum / static_cast<double>(members.size());
    groups.push_back(std::move(g));
  }

  const Vec2 robot = obs.robot.position;
  std::sort(groups.begin(), groups.end(), [&](const DetectedGroup& a, const DetectedGroup& b) {
    const double da = distance(a.centroid, robot);
    const double db = distance(b.centroid, robot);
    if (da != db) {
      return da < db;
    }
    return a.member_ids.front() < b.member_ids.front();
  });
  return groups;
}

/// Nearest group that is in range, blocks the straight path to the goal with
/// its inflated disk, and does not already contain the robot's center.
inline std::optional<DetectedGroup> taga_active(const AgentState& robot, const Vec2& goal,
                                                const std::vector<DetectedGroup>& groups,
                                                const TagaConfig& cfg) {
  for (const DetectedGroup& g : groups) {
    const geom::Disk inflated{g.centroid, g.radius + cfg.d_safe};
    const double d = distance(robot.position, g.centroid);
    if (d <= cfg.detection_range && d > inflated.radius + geom::kEpsilon &&
        geom::segment_disk_intersects(robot.position, goal, inflated)) {
      return g;
    }
  }
  return std::nullopt;
}

/// Full-speed velocity toward the selected tangent point of the inflated group disk.
/// Throws geom::DegenerateTangent when the robot is inside the inflated disk.
inline Vec2 taga_action(const AgentState& robot, const DetectedGroup& group, const Vec2& goal,
                        const TagaConfig& cfg, double v_max) {
  const Vec2 target = geom::select_tangent(robot.position, group.disk(), cfg.d_safe, goal);
  return normalized(target - robot.position) * v_max;
}

/// Switching policy: tangent action while a detected group blocks the path,
/// the base policy otherwise.
class TagaPolicy final : public Policy {
 public:
  TagaPolicy(std::string base_name, PolicyFn base, TagaConfig cfg)
      : base_name_(std::move(base_name)), base_(std::move(base)), cfg_(cfg) {}

  Vec2 act(const sim::WorldObservation& obs) override {
    state_.active_group.reset();
    const auto groups = detect_groups(obs, cfg_);
    if (auto group = taga_active(obs.robot, obs.goal, groups, cfg_)) {
      try {
        const Vec2 v = taga_action(obs.robot, *group, obs.goal, cfg_, obs.robot.pref_speed);
        state_.active_group = std::move(group);
        return v;
      } catch (const geom::DegenerateTangent&) {
        // Robot already inside the inflated boundary: defer to the base policy.
      }
    }
    return base_(obs);
  }

  TagaMode mode() const override { return state_.mode(); }
  const TagaState& state() const { return state_; }
  void reset() override { state_ = {}; }
  std::string name() const override { return base_name_ + "+taga"; }

 private:
  std::string base_name_;
  PolicyFn base_;
  TagaConfig cfg_;
  TagaState state_;
};

inline TagaPolicy wrap_policy(std::string base_name, PolicyFn base, const TagaConfig& cfg) {
  return TagaPolicy(std::move(base_name), std::move(base), cfg);
}

}  // namespace groupnav::taga
