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
#include <cstddef>
#include <span>
#include <vector>

#include "groupnav/agent.hpp"
#include "groupnav/vec2.hpp"

namespace groupnav::orca {

/// Velocity-space half-plane. Feasible velocities v satisfy dot(v - point, normal) >= 0.
///
/// `direction` is the boundary direction with the feasible side on its left,
/// which is the representation the incremental solver works with;
/// normal == perp(direction).
struct HalfPlane {
  Vec2 point;
  Vec2 direction;

  Vec2 normal() const { return perp(direction); }

  /// Signed violation of v, positive when v lies outside.
  double violation(const Vec2& v) const { return det(direction, point - v); }
};

namespace detail {

inline constexpr double kParallelEps = 1e-12;

// Optimizes along the boundary of line `index`, subject to lines [0, index)
// and the speed disk. Returns false when that boundary has no feasible part.
inline bool solve_on_line(std::span<const HalfPlane> lines, std::size_t index, double radius,
                          const Vec2& opt, bool direction_opt, Vec2& result) {
  const HalfPlane& line = lines[index];
  const double dp = dot(line.point, line.direction);
  const double discriminant = dp * dp + radius * radius - abs_sq(line.point);
  if (discriminant < 0.0) {
    return false;
  }
  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dp - sqrt_disc;
  double t_right = -dp + sqrt_disc;

  for (std::size_t i = 0; i < index; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);
    if (std::fabs(denominator) <= kParallelEps) {
      if (numerator < 0.0) {
        return false;
      }
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) {
      return false;
    }
  }

  if (direction_opt) {
    result = line.point + line.direction * (dot(opt, line.direction) > 0.0 ? t_right : t_left);
  } else {
    const double t = std::clamp(dot(line.direction, opt - line.point), t_left, t_right);
    result = line.point + line.direction * t;
  }
  return true;
}

// Incremental 2D program. Returns lines.size() on success, otherwise the
// index of the first line that could not be satisfied (result then holds the
// optimum over the preceding lines).
inline std::size_t solve_2d(std::span<const HalfPlane> lines, double radius, const Vec2& opt,
                            bool direction_opt, Vec2& result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (abs_sq(opt) > radius * radius) {
    result = normalized(opt) * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].violation(result) > 0.0) {
      const Vec2 previous = result;
      if (!solve_on_line(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Infeasible case: minimize the largest violation over lines [begin, n).
inline void solve_3d(std::span<const HalfPlane> lines, std::size_t begin, double radius,
                     Vec2& result) {
  double worst = 0.0;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (lines[i].violation(result) <= worst) {
      continue;
    }
    std::vector<HalfPlane> projected;
    projected.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      HalfPlane proj;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::fabs(determinant) <= kParallelEps) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) {
          continue;
        }
        proj.point = (lines[i].point + lines[j].point) * 0.5;
      } else {
        proj.point = lines[i].point +
                     lines[i].direction *
                         (det(lines[j].direction, lines[i].point - lines[j].point) / determinant);
      }
      proj.direction = normalized(lines[j].direction - lines[i].direction);
      projected.push_back(proj);
    }

    const Vec2 previous = result;
    if (solve_2d(projected, radius, -perp(lines[i].direction), true, result) <
        projected.size()) {
      // Only reachable through rounding; the previous result is feasible by construction.
      result = previous;
    }
    worst = lines[i].violation(result);
  }
}

}  // namespace detail

/// ORCA constraint on `self`'s velocity induced by `other` over horizon `tau`.
///
/// Both agents take half of the responsibility. Overlapping agents get a
/// constraint that separates them within one step `dt`.
inline HalfPlane orca_halfplane(const AgentState& self, const AgentState& other, double tau,
                                double dt) {
  const Vec2 rel_pos = other.position - self.position;
  const Vec2 rel_vel = self.velocity - other.velocity;
  const double dist_sq = abs_sq(rel_pos);
  const double combined = self.radius + other.radius;
  const double combined_sq = combined * combined;

  HalfPlane line;
  Vec2 u;

  if (dist_sq > combined_sq) {
    const double inv_tau = 1.0 / tau;
    // From the cutoff-circle center to the relative velocity.
    const Vec2 w = rel_vel - rel_pos * inv_tau;
    const double w_len_sq = abs_sq(w);
    const double dot1 = dot(w, rel_pos);

    if (dot1 < 0.0 && dot1 * dot1 > combined_sq * w_len_sq) {
      // Closest boundary point is on the cutoff circle.
      const double w_len = std::sqrt(w_len_sq);
      const Vec2 unit_w = w / w_len;
      line.direction = {unit_w.y, -unit_w.x};
      u = unit_w * (combined * inv_tau - w_len);
    } else {
      const double leg = std::sqrt(dist_sq - combined_sq);
      if (det(rel_pos, w) > 0.0) {
        line.direction = Vec2{rel_pos.x * leg - rel_pos.y * combined,
                              rel_pos.x * combined + rel_pos.y * leg} /
                         dist_sq;
      } else {
        line.direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined,
                               -rel_pos.x * combined + rel_pos.y * leg} /
                         dist_sq;
      }
      u = line.direction * dot(rel_vel, line.direction) - rel_vel;
    }
  } else {
    const double inv_dt = 1.0 / dt;
    const Vec2 w = rel_vel - rel_pos * inv_dt;
    const double w_len = norm(w);
    const Vec2 unit_w = w / w_len;
    line.direction = {unit_w.y, -unit_w.x};
    u = unit_w * (combined * inv_dt - w_len);
  }

  line.point = self.velocity + u * 0.5;
  return line;
}

/// Velocity closest to `v_pref` inside every neighbor's half-plane and the
/// speed disk of radius `v_max`. When no such velocity exists the one with the
/// smallest maximum violation is returned.
///
/// Constraints are applied in the order the neighbors are given; callers pass
/// neighbors sorted by ascending id.
inline Vec2 orca_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                          const Vec2& v_pref, double tau, double dt, double v_max) {
  std::vector<HalfPlane> lines;
  lines.reserve(neighbors.size());
  for (const AgentState& other : neighbors) {
    lines.push_back(orca_halfplane(self, other, tau, dt));
  }

  Vec2 result;
  const std::size_t failed = detail::solve_2d(lines, v_max, v_pref, false, result);
  if (failed < lines.size()) {
    detail::solve_3d(lines, failed, v_max, result);
  }
  return result;
}

/// Whether the plain 2D program admits a solution (no fallback needed).
inline bool is_feasible(std::span<const HalfPlane> lines, double v_max, const Vec2& v_pref) {
  Vec2 result;
  return detail::solve_2d(lines, v_max, v_pref, false, result) == lines.size();
}

}  // namespace groupnav::orca
