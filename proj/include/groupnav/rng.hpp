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
#include <cstdint>
#include <random>

#include "groupnav/vec2.hpp"

namespace groupnav {

/// Seeded generator with platform-independent draws.
///
/// Standard distributions are implementation-defined, so the draws are built
/// directly from the 64-bit engine output.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform point in the disk of the given radius around `center`.
  Vec2 in_disk(const Vec2& center, double radius) {
    const double r = radius * std::sqrt(uniform());
    // Rejection on the unit square keeps the draw free of trig calls.
    Vec2 dir;
    double n2 = 0.0;
    do {
      dir = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
      n2 = abs_sq(dir);
    } while (n2 > 1.0 || n2 < 1e-12);
    return center + dir * (r / std::sqrt(n2));
  }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_{0};
};

}  // namespace groupnav
