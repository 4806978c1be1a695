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

#include <cmath>
#include <span>
#include <stdexcept>

#include "groupnav/agent.hpp"
#include "groupnav/vec2.hpp"

namespace groupnav::sf {

/// Social force parameters, unit mass.
struct SFParams {
  double relax_time = 0.5;  // s
  double strength = 2.0;    // A, m/s^2
  double range = 0.3;       // B, m
  double max_force = 10.0;  // m/s^2

  friend bool operator==(const SFParams&, const SFParams&) = default;
};

class CoincidentAgents : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A * exp((r_ij - d_ij) / B): magnitude of the repulsion at center distance d.
inline double repulsion_magnitude(double combined_radius, double distance, const SFParams& p) {
  return p.strength * std::exp((combined_radius - distance) / p.range);
}

/// Driving force toward `goal` plus pairwise exponential repulsion, clamped to
/// params.max_force. The driving direction is zero once the agent sits on its goal.
inline Vec2 sf_force(const AgentState& self, std::span<const AgentState> neighbors,
                     const Vec2& goal, const SFParams& params) {
  const Vec2 to_goal = goal - self.position;
  const Vec2 heading = norm(to_goal) < 1e-9 ? Vec2{} : normalized(to_goal);
  Vec2 force = (heading * self.pref_speed - self.velocity) / params.relax_time;

  for (const AgentState& other : neighbors) {
    const Vec2 away = self.position - other.position;
    const double d = norm(away);
    if (d < 1e-9) {
      throw CoincidentAgents("sf_force: agents share a position");
    }
    force += (away / d) * repulsion_magnitude(self.radius + other.radius, d, params);
  }
  return clamp_norm(force, params.max_force);
}

/// One explicit Euler step of the force, capped at v_max.
inline Vec2 sf_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                        const Vec2& goal, const SFParams& params, double dt, double v_max) {
  return clamp_norm(self.velocity + sf_force(self, neighbors, goal, params) * dt, v_max);
}

}  // namespace groupnav::sf
