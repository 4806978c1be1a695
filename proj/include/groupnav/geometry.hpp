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
#include <stdexcept>
#include <utility>

#include "groupnav/vec2.hpp"

namespace groupnav::geom {

/// Tolerance for all degeneracy predicates, in meters.
inline constexpr double kEpsilon = 1e-9;

struct Disk {
  Vec2 center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Raised when a tangent is requested from a point on or inside a disk.
class DegenerateTangent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Both tangent points of `disk` seen from the external point `p`.
///
/// With d = |p - c| and cos(beta) = r / d, each tangent point is
/// c + r * rot(+-beta)(unit(p - c)); sin(beta) = sqrt(d^2 - r^2) / d, so no
/// trigonometric calls are needed. The first element is the counterclockwise
/// one (rotation by +beta about the center).
inline std::pair<Vec2, Vec2> tangent_points(const Vec2& p, const Disk& disk) {
  const Vec2 offset = p - disk.center;
  const double d = norm(offset);
  if (!(d > disk.radius + kEpsilon)) {
    throw DegenerateTangent("tangent_points: point lies on or inside the disk");
  }
  const Vec2 u = offset / d;
  const double cos_b = disk.radius / d;
  const double sin_b = std::sqrt(std::max(0.0, d * d - disk.radius * disk.radius)) / d;

  const Vec2 along = u * cos_b;
  const Vec2 across = perp(u) * sin_b;
  const Vec2 ccw = disk.center + (along + across) * disk.radius;
  const Vec2 cw = disk.center + (along - across) * disk.radius;
  return {ccw, cw};
}

/// True iff the closed segment [a, b] comes within disk.radius of the center.
inline bool segment_disk_intersects(const Vec2& a, const Vec2& b, const Disk& disk) {
  const Vec2 ab = b - a;
  const double len2 = abs_sq(ab);
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(dot(disk.center - a, ab) / len2, 0.0, 1.0);
  }
  const Vec2 closest = a + ab * t;
  return abs_sq(closest - disk.center) <= disk.radius * disk.radius;
}

/// Tangent point of the disk inflated by `inflate` that best heads toward `goal`.
///
/// Picks the candidate whose direction from `robot` has the larger dot product
/// with unit(goal - robot); exact ties resolve to the counterclockwise point.
inline Vec2 select_tangent(const Vec2& robot, const Disk& group, double inflate,
                           const Vec2& goal) {
  const Disk inflated{group.center, group.radius + inflate};
  const auto [ccw, cw] = tangent_points(robot, inflated);
  const Vec2 to_goal = normalized(goal - robot);
  const double score_ccw = dot(normalized(ccw - robot), to_goal);
  const double score_cw = dot(normalized(cw - robot), to_goal);
  return score_cw > score_ccw ? cw : ccw;
}

}  // namespace groupnav::geom
