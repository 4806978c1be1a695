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

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "groupnav/orca.hpp"
#include "groupnav/sim.hpp"
#include "groupnav/social_force.hpp"

namespace groupnav {

enum class TagaMode { Inactive, Avoiding };

constexpr std::string_view to_string(TagaMode m) {
  return m == TagaMode::Avoiding ? "Avoiding" : "Inactive";
}

/// Maps an observation to a velocity command.
using PolicyFn = std::function<Vec2(const sim::WorldObservation&)>;

/// Stateful policy interface used by the episode runner.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Vec2 act(const sim::WorldObservation& obs) = 0;
  /// Mode that produced the most recent action.
  virtual TagaMode mode() const { return TagaMode::Inactive; }
  /// Clears per-episode state.
  virtual void reset() {}
  virtual std::string name() const = 0;
};

/// Adapts a stateless PolicyFn.
class FunctionPolicy final : public Policy {
 public:
  FunctionPolicy(std::string name, PolicyFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  Vec2 act(const sim::WorldObservation& obs) override { return fn_(obs); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  PolicyFn fn_;
};

/// Robot ORCA toward the goal at full preferred speed, avoiding every visible human.
inline PolicyFn make_orca_policy(double tau, double dt) {
  return [tau, dt](const sim::WorldObservation& obs) {
    const AgentState& r = obs.robot;
    const Vec2 v_pref = normalized(obs.goal - r.position) * r.pref_speed;
    return orca::orca_velocity(r, obs.visible_humans, v_pref, tau, dt, r.pref_speed);
  };
}

/// Robot social force toward the goal with repulsion from every visible human.
inline PolicyFn make_sf_policy(const sf::SFParams& params, double dt) {
  return [params, dt](const sim::WorldObservation& obs) {
    return sf::sf_velocity(obs.robot, obs.visible_humans, obs.goal, params, dt,
                           obs.robot.pref_speed);
  };
}

}  // namespace groupnav
