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
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "groupnav/groupnav.hpp"

// Shared fixtures and brute-force oracles for the unit and acceptance tests.
namespace groupnav::testing {

/// Robot on the y axis heading straight through one static group centered at
/// the origin. Members sit on a ring of `ring` meters at 45, 135, 225 and 315
/// degrees, so the straight line passes between them.
inline sim::WorldState scripted_static_group(const sim::ScenarioConfig& config,
                                             double ring = 1.0) {
  const double half = config.arena_half_extent;
  sim::WorldState w;
  w.rng = Rng(config.seed);
  w.robot = AgentState{.id = 0,
                       .position = {0.0, -0.75 * half},
                       .velocity = {},
                       .radius = config.robot_radius,
                       .goal = {0.0, 0.75 * half},
                       .pref_speed = config.pref_speed,
                       .role = Role::Robot};
  sim::GroupState g;
  g.group_id = 0;
  g.kind = sim::GroupKind::Static;
  const double s = ring * std::numbers::sqrt2 / 2.0;
  const Vec2 corners[] = {{s, s}, {-s, s}, {-s, -s}, {s, -s}};
  for (const Vec2& c : corners) {
    AgentState h;
    h.id = static_cast<int>(w.humans.size()) + 1;
    h.position = c;
    h.goal = c;
    h.radius = config.human_radius;
    h.pref_speed = config.pref_speed;
    h.role = Role::StaticGroupMember;
    w.humans.push_back(h);
    g.member_ids.push_back(h.id);
  }
  g.member_count = static_cast<int>(g.member_ids.size());
  w.groups.push_back(g);
  sim::refresh_groups(w);
  return w;
}

/// Grid search over an n x n lattice on [-v_max, v_max]^2: the admissible
/// lattice point closest to v_pref, or nothing if no lattice point is admissible.
inline std::optional<Vec2> grid_oracle(std::span<const orca::HalfPlane> lines, double v_max,
                                       const Vec2& v_pref, int n = 201) {
  std::optional<Vec2> best;
  double best_d = 0.0;
  const double step = 2.0 * v_max / (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 v{-v_max + i * step, -v_max + j * step};
      if (v.x * v.x + v.y * v.y > v_max * v_max) {
        continue;
      }
      bool ok = true;
      for (const auto& l : lines) {
        // feasible side: (v - point) . normal >= 0 with normal = perp(direction)
        const Vec2 nrm{-l.direction.y, l.direction.x};
        if ((v.x - l.point.x) * nrm.x + (v.y - l.point.y) * nrm.y < 0.0) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        continue;
      }
      const double d = std::hypot(v.x - v_pref.x, v.y - v_pref.y);
      if (!best || d < best_d) {
        best = v;
        best_d = d;
      }
    }
  }
  return best;
}

/// Smallest distance between two points moving linearly over [0, horizon].
inline double min_separation(Vec2 rel_pos, Vec2 rel_vel, double horizon) {
  const double vv = rel_vel.x * rel_vel.x + rel_vel.y * rel_vel.y;
  double t = 0.0;
  if (vv > 0.0) {
    t = -(rel_pos.x * rel_vel.x + rel_pos.y * rel_vel.y) / vv;
    t = std::clamp(t, 0.0, horizon);
  }
  return std::hypot(rel_pos.x + rel_vel.x * t, rel_pos.y + rel_vel.y * t);
}

inline std::string trace_text(const std::string& policy, const bench::SuiteConfig& suite,
                              const bench::EpisodeRun& run) {
  std::ostringstream out;
  bench::write_trace(out, policy, suite, run);
  return out.str();
}

}  // namespace groupnav::testing
