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

#include <string_view>

#include "groupnav/vec2.hpp"

namespace groupnav {

enum class Role { Individual, GroupLeader, GroupFollower, StaticGroupMember, Robot };

constexpr std::string_view to_string(Role r) {
  switch (r) {
    case Role::Individual: return "Individual";
    case Role::GroupLeader: return "GroupLeader";
    case Role::GroupFollower: return "GroupFollower";
    case Role::StaticGroupMember: return "StaticGroupMember";
    case Role::Robot: return "Robot";
  }
  return "?";
}

/// One human or the robot. Speed never exceeds pref_speed.
struct AgentState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  Vec2 goal;
  double pref_speed = 1.0;
  Role role = Role::Individual;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

}  // namespace groupnav
