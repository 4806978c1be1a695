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
#include <ostream>

namespace groupnav {

/// Planar vector. Positions are meters, velocities m/s, forces m/s^2 (unit mass).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x << ", " << v.y << ')';
  }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is counterclockwise of a.
constexpr double det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

constexpr double abs_sq(const Vec2& v) { return dot(v, v); }

inline double norm(const Vec2& v) { return std::sqrt(abs_sq(v)); }

inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Unit vector along v, or the zero vector when v is zero.
inline Vec2 normalized(const Vec2& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{};
}

/// Rescales v to magnitude max_len when it is longer; otherwise returns v unchanged.
inline Vec2 clamp_norm(const Vec2& v, double max_len) {
  const double n2 = abs_sq(v);
  if (n2 > max_len * max_len) {
    return v * (max_len / std::sqrt(n2));
  }
  return v;
}

/// Counterclockwise quarter turn.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

}  // namespace groupnav
