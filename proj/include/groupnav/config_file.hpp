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
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <vector>

#include "groupnav/sim.hpp"
#include "groupnav/social_force.hpp"
#include "groupnav/taga.hpp"

namespace groupnav::bench {

/// Everything a benchmark run depends on. Episode i of every cell uses seed
/// scenario.seed + i.
struct SuiteConfig {
  sim::ScenarioConfig scenario;
  taga::TagaConfig taga;
  sf::SFParams sf;
  double robot_orca_tau = 2.0;
  std::vector<std::string> policies = {"orca", "orca+taga", "sf", "sf+taga"};
  int episodes = 100;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw sim::InvalidConfig("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw sim::InvalidConfig("config key '" + key + "': expected true/false, got '" + text + "'");
}

struct Field {
  std::string key;
  std::function<std::string(const SuiteConfig&)> get;
  std::function<void(SuiteConfig&, const std::string&)> set;
};

template <typename Member>
Field number_field(std::string key, Member accessor) {
  using T = std::remove_cvref_t<decltype(accessor(std::declval<SuiteConfig&>()))>;
  return {key,
          [accessor](const SuiteConfig& c) {
            const T v = accessor(c);
            if constexpr (std::is_same_v<T, bool>) {
              return std::string(v ? "true" : "false");
            } else if constexpr (std::is_floating_point_v<T>) {
              return format_double(v);
            } else {
              return std::to_string(v);
            }
          },
          [accessor, key](SuiteConfig& c, const std::string& text) {
            if constexpr (std::is_same_v<T, bool>) {
              accessor(c) = parse_bool(key, text);
            } else {
              accessor(c) = parse_number<T>(key, text);
            }
          }};
}

#define GROUPNAV_FIELD(key, expr) number_field(key, [](auto& c) -> auto& { return expr; })

inline const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f = {
        GROUPNAV_FIELD("arena_half_extent", c.scenario.arena_half_extent),
        GROUPNAV_FIELD("total_humans", c.scenario.total_humans),
        GROUPNAV_FIELD("n_individuals", c.scenario.n_individuals),
        GROUPNAV_FIELD("n_groups", c.scenario.n_groups),
        GROUPNAV_FIELD("group_size_min", c.scenario.group_size_min),
        GROUPNAV_FIELD("group_size_max", c.scenario.group_size_max),
        GROUPNAV_FIELD("static_group_fraction", c.scenario.static_group_fraction),
        GROUPNAV_FIELD("dt", c.scenario.dt),
        GROUPNAV_FIELD("max_steps", c.scenario.max_steps),
        GROUPNAV_FIELD("sensor_range", c.scenario.sensor_range),
        GROUPNAV_FIELD("human_radius", c.scenario.human_radius),
        GROUPNAV_FIELD("robot_radius", c.scenario.robot_radius),
        GROUPNAV_FIELD("pref_speed", c.scenario.pref_speed),
        GROUPNAV_FIELD("cohesion_k", c.scenario.cohesion_k),
        GROUPNAV_FIELD("goal_radius", c.scenario.goal_radius),
        GROUPNAV_FIELD("terminate_on_group_intrusion", c.scenario.terminate_on_group_intrusion),
        GROUPNAV_FIELD("orca_tau", c.scenario.orca_tau),
        GROUPNAV_FIELD("neighbor_dist", c.scenario.neighbor_dist),
        GROUPNAV_FIELD("group_spread", c.scenario.group_spread),
        GROUPNAV_FIELD("group_clearance", c.scenario.group_clearance),
        GROUPNAV_FIELD("member_spacing", c.scenario.member_spacing),
        GROUPNAV_FIELD("seed", c.scenario.seed),
        GROUPNAV_FIELD("d_safe", c.taga.d_safe),
        GROUPNAV_FIELD("cluster_eps", c.taga.cluster_eps),
        GROUPNAV_FIELD("velocity_tol", c.taga.velocity_tol),
        GROUPNAV_FIELD("min_group_size", c.taga.min_group_size),
        GROUPNAV_FIELD("detection_range", c.taga.detection_range),
        GROUPNAV_FIELD("sf_relax_time", c.sf.relax_time),
        GROUPNAV_FIELD("sf_strength", c.sf.strength),
        GROUPNAV_FIELD("sf_range", c.sf.range),
        GROUPNAV_FIELD("sf_max_force", c.sf.max_force),
        GROUPNAV_FIELD("robot_orca_tau", c.robot_orca_tau),
        GROUPNAV_FIELD("episodes", c.episodes),
    };
    f.push_back({"policies",
                 [](const SuiteConfig& c) {
                   std::string out;
                   for (const auto& p : c.policies) {
                     out += (out.empty() ? "" : ", ") + p;
                   }
                   return out;
                 },
                 [](SuiteConfig& c, const std::string& text) {
                   c.policies.clear();
                   std::stringstream ss(text);
                   std::string item;
                   while (std::getline(ss, item, ',')) {
                     if (auto name = trim(item); !name.empty()) {
                       c.policies.push_back(name);
                     }
                   }
                 }});
    return f;
  }();
  return table;
}

#undef GROUPNAV_FIELD

}  // namespace detail

inline void validate(const SuiteConfig& c) {
  sim::validate(c.scenario);
  taga::validate(c.taga);
  if (!(c.sf.relax_time > 0.0 && c.sf.strength > 0.0 && c.sf.range > 0.0 &&
        c.sf.max_force > 0.0)) {
    throw sim::InvalidConfig("invalid social force parameters: all must be > 0");
  }
  if (!(c.robot_orca_tau > 0.0)) {
    throw sim::InvalidConfig("robot_orca_tau must be > 0");
  }
  if (c.episodes < 0) {
    throw sim::InvalidConfig("episodes must be >= 0");
  }
  static const std::vector<std::string> known = {"orca", "orca+taga", "sf", "sf+taga"};
  if (c.policies.empty()) {
    throw sim::InvalidConfig("policies must name at least one policy");
  }
  for (const auto& p : c.policies) {
    if (std::find(known.begin(), known.end(), p) == known.end()) {
      throw sim::InvalidConfig("unknown policy '" + p + "'");
    }
  }
}

/// Applies one `key = value` assignment.
inline void set_field(SuiteConfig& config, const std::string& key, const std::string& value) {
  for (const auto& f : detail::fields()) {
    if (f.key == key) {
      f.set(config, value);
      return;
    }
  }
  throw sim::InvalidConfig("unknown config key '" + key + "'");
}

/// Parses `key = value` lines over the defaults. '#' starts a comment.
inline SuiteConfig parse_suite(std::string_view text) {
  SuiteConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = detail::trim(line);
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw sim::InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    }
    set_field(config, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
  }
  validate(config);
  return config;
}

inline SuiteConfig load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw sim::InvalidConfig("cannot open config file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite(buf.str());
}

/// Every resolved field, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> to_key_values(const SuiteConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : detail::fields()) {
    out.emplace_back(f.key, f.get(c));
  }
  return out;
}

}  // namespace groupnav::bench
