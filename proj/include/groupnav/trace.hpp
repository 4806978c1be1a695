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
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groupnav/bench.hpp"
#include "groupnav/config_file.hpp"

// Line-delimited JSON episode traces: one header record (policy, seed, full
// resolved config, group membership), one record per step, one report record.
namespace groupnav::bench {

using nlohmann::json;

namespace detail {

inline json to_json(const Vec2& v) { return json::array({v.x, v.y}); }

inline Vec2 vec_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline sim::OutcomeKind outcome_from_string(const std::string& s) {
  for (auto k : {sim::OutcomeKind::Success, sim::OutcomeKind::Collision,
                 sim::OutcomeKind::GroupCollision, sim::OutcomeKind::Timeout}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

}  // namespace detail

inline json step_to_json(const StepRecord& s) {
  json humans = json::array();
  for (const HumanSample& h : s.humans) {
    humans.push_back({{"id", h.id}, {"pos", detail::to_json(h.pos)}, {"vel", detail::to_json(h.vel)}});
  }
  json groups = json::array();
  for (const GroupSample& g : s.groups) {
    groups.push_back({{"group_id", g.group_id},
                      {"centroid", detail::to_json(g.centroid)},
                      {"radius", g.radius}});
  }
  return {{"type", "step"},
          {"t", s.t},
          {"robot_pos", detail::to_json(s.robot_pos)},
          {"robot_vel", detail::to_json(s.robot_vel)},
          {"taga_mode", std::string(to_string(s.taga_mode))},
          {"inside_group", s.inside_group},
          {"humans", std::move(humans)},
          {"groups", std::move(groups)}};
}

inline StepRecord step_from_json(const json& j) {
  StepRecord s;
  s.t = j.at("t").get<int>();
  s.robot_pos = detail::vec_from_json(j.at("robot_pos"));
  s.robot_vel = detail::vec_from_json(j.at("robot_vel"));
  s.taga_mode = j.at("taga_mode").get<std::string>() == "Avoiding" ? TagaMode::Avoiding
                                                                  : TagaMode::Inactive;
  s.inside_group = j.at("inside_group").get<bool>();
  for (const json& h : j.at("humans")) {
    s.humans.push_back({h.at("id").get<int>(), detail::vec_from_json(h.at("pos")),
                        detail::vec_from_json(h.at("vel"))});
  }
  for (const json& g : j.at("groups")) {
    s.groups.push_back({g.at("group_id").get<int>(), detail::vec_from_json(g.at("centroid")),
                        g.at("radius").get<double>()});
  }
  return s;
}

inline void write_trace(std::ostream& out, const std::string& policy, const SuiteConfig& config,
                        const EpisodeRun& run) {
  json cfg = json::object();
  for (const auto& [key, value] : to_key_values(config)) {
    cfg[key] = value;
  }
  json groups = json::array();
  for (const sim::GroupState& g : run.groups) {
    json entry = {{"group_id", g.group_id},
                  {"kind", g.kind == sim::GroupKind::Static ? "Static" : "Dynamic"},
                  {"member_ids", g.member_ids}};
    entry["leader_id"] = g.leader_id ? json(*g.leader_id) : json(nullptr);
    groups.push_back(std::move(entry));
  }
  out << json{{"type", "header"},
              {"policy", policy},
              {"seed", run.report.seed},
              {"config", std::move(cfg)},
              {"groups", std::move(groups)}}
             .dump()
      << '\n';
  for (const StepRecord& s : run.steps) {
    out << step_to_json(s).dump() << '\n';
  }
  const EpisodeReport& r = run.report;
  out << json{{"type", "report"},
              {"seed", r.seed},
              {"outcome", std::string(to_string(r.outcome.kind))},
              {"terminal_step", r.outcome.terminal_step},
              {"nav_time", r.nav_time},
              {"path_length", r.path_length},
              {"gcr_fraction", r.gcr_fraction}}
             .dump()
      << '\n';
}

struct TraceValidation {
  std::vector<std::string> errors;
  int steps = 0;

  bool ok() const { return errors.empty(); }
};

/// Re-derives every stored quantity of a trace from its raw positions.
///
/// Checks record framing, step numbering, speed limits, group centroid and
/// radius against member positions, the inside_group flags, path length,
/// the time-fraction group collision rate, nav_time and outcome consistency.
inline TraceValidation validate_trace(std::istream& in) {
  TraceValidation v;
  auto fail = [&](const std::string& msg) { v.errors.push_back(msg); };

  std::vector<json> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception& e) {
      fail("line " + std::to_string(lineno) + ": " + e.what());
      return v;
    }
  }
  if (records.size() < 3 || records.front().value("type", "") != "header" ||
      records.back().value("type", "") != "report") {
    fail("trace must hold a header, at least one step and a report");
    return v;
  }

  try {
    SuiteConfig config;
    for (const auto& [key, value] : records.front().at("config").items()) {
      set_field(config, key, value.get<std::string>());
    }
    const sim::ScenarioConfig& sc = config.scenario;

    std::vector<std::vector<int>> members;
    for (const json& g : records.front().at("groups")) {
      members.push_back(g.at("member_ids").get<std::vector<int>>());
    }

    std::vector<StepRecord> steps;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
      steps.push_back(step_from_json(records[i]));
    }
    v.steps = static_cast<int>(steps.size());

    constexpr double kTol = 1e-9;
    double path = 0.0;
    int inside_count = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const StepRecord& s = steps[i];
      const std::string at = "step " + std::to_string(s.t) + ": ";
      if (s.t != static_cast<int>(i)) {
        fail(at + "expected t = " + std::to_string(i));
      }
      if (i > 0) {
        const Vec2 d = s.robot_pos - steps[i - 1].robot_pos;
        path += std::sqrt(d.x * d.x + d.y * d.y);
      }
      if (norm(s.robot_vel) > sc.pref_speed + kTol) {
        fail(at + "robot speed exceeds pref_speed");
      }
      for (const HumanSample& h : s.humans) {
        if (norm(h.vel) > sc.pref_speed + kTol) {
          fail(at + "human " + std::to_string(h.id) + " speed exceeds pref_speed");
        }
      }
      if (s.groups.size() != members.size()) {
        fail(at + "group count differs from header");
        continue;
      }
      bool inside = false;
      for (std::size_t g = 0; g < s.groups.size(); ++g) {
        const GroupSample& gs = s.groups[g];
        Vec2 sum;
        for (int id : members[g]) {
          sum += s.humans.at(static_cast<std::size_t>(id - 1)).pos;
        }
        const Vec2 mean = sum / static_cast<double>(members[g].size());
        double radius = 0.0;
        for (int id : members[g]) {
          radius = std::max(radius, norm(s.humans.at(static_cast<std::size_t>(id - 1)).pos - mean));
        }
        if (norm(mean - gs.centroid) > kTol) {
          fail(at + "group " + std::to_string(gs.group_id) + " centroid is not the member mean");
        }
        if (std::fabs(radius - gs.radius) > kTol) {
          fail(at + "group " + std::to_string(gs.group_id) + " radius is not the max member distance");
        }
        const Vec2 d = s.robot_pos - gs.centroid;
        inside = inside || std::sqrt(d.x * d.x + d.y * d.y) < gs.radius;
      }
      if (inside != s.inside_group) {
        fail(at + "inside_group flag disagrees with group disks");
      }
      if (i > 0 && inside) {
        ++inside_count;
      }
    }

    const json& rep = records.back();
    const int terminal = rep.at("terminal_step").get<int>();
    const auto kind = detail::outcome_from_string(rep.at("outcome").get<std::string>());
    if (terminal != steps.back().t) {
      fail("report: terminal_step differs from last step");
    }
    if (terminal > sc.max_steps || (kind == sim::OutcomeKind::Timeout && terminal != sc.max_steps)) {
      fail("report: terminal_step inconsistent with max_steps");
    }
    if (std::fabs(rep.at("path_length").get<double>() - path) > kTol) {
      fail("report: path_length differs from recomputed " + format_double(path));
    }
    if (steps.size() > 1) {
      const double gcr = static_cast<double>(inside_count) / static_cast<double>(steps.size() - 1);
      if (rep.at("gcr_fraction").get<double>() != gcr) {
        fail("report: gcr_fraction differs from recomputed " + format_double(gcr));
      }
    }
    if (std::fabs(rep.at("nav_time").get<double>() - terminal * sc.dt) > kTol) {
      fail("report: nav_time is not terminal_step * dt");
    }
  } catch (const std::exception& e) {
    fail(std::string("malformed trace: ") + e.what());
  }
  return v;
}

}  // namespace groupnav::bench
