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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "groupnav/groupnav.hpp"
#include "support.hpp"

namespace {

using namespace groupnav;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const Verdict& v) {
  std::printf("%s %2d %-34s %s\n", v.pass ? "PASS" : "FAIL", n, title.c_str(), v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const bench::CellResult& cell(const std::vector<bench::CellResult>& cells, const std::string& name) {
  for (const auto& c : cells) {
    if (c.policy == name) return c;
  }
  throw std::runtime_error("missing cell " + name);
}

// Rows of an emitted summary table, parsed back from text.
std::vector<std::vector<std::string>> summary_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("model,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    rows.push_back(cols);
  }
  return rows;
}

bool identity_holds(const std::string& summary, double& worst) {
  bool ok = true;
  for (const auto& r : summary_rows(summary)) {
    const double s = std::stod(r.at(1)) + std::stod(r.at(2)) + std::stod(r.at(3)) + std::stod(r.at(4));
    worst = std::max(worst, std::abs(s - 1.0));
    ok = ok && std::abs(s - 1.0) <= 1e-9;
  }
  return ok;
}

std::string summary_text;  // default suite, reused by the identity check

Verdict gcr_reduction(const std::vector<bench::CellResult>& cells, double seconds) {
  Verdict v{true, ""};
  for (const std::string base : {"orca", "sf"}) {
    const double g0 = cell(cells, base).summary.gcr;
    const double g1 = cell(cells, base + "+taga").summary.gcr;
    const double red = g0 > 0 ? (g0 - g1) / g0 : 0.0;
    v.pass = v.pass && g0 > 0 && red >= 0.5;
    v.detail += fmt("%s %.2f->%.2f (%.0f%%)  ", base.c_str(), g0, g1, 100 * red);
  }
  v.pass = v.pass && seconds < 120;
  v.detail += fmt("[%.1f s]", seconds);
  return v;
}

Verdict sr_non_collapse(const std::vector<bench::CellResult>& cells) {
  Verdict v{true, ""};
  for (const std::string base : {"orca", "sf"}) {
    const double s0 = cell(cells, base).summary.sr;
    const double s1 = cell(cells, base + "+taga").summary.sr;
    v.pass = v.pass && std::abs(s1 - s0) <= 0.15;
    v.detail += fmt("%s SR %.2f->%.2f  ", base.c_str(), s0, s1);
  }
  return v;
}

Verdict tangent_suite() {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> uc(-50, 50), ur(1e-3, 10), uf(1.0 + 1e-6, 20),
      ua(-3.14159, 3.14159);
  double worst_orth = 0, worst_circ = 0;
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const geom::Disk d{{uc(gen), uc(gen)}, ur(gen)};
    const double dist = d.radius * uf(gen), a = ua(gen);
    const Vec2 p{d.center.x + dist * std::cos(a), d.center.y + dist * std::sin(a)};
    const auto [t1, t2] = geom::tangent_points(p, d);
    const double scale = (p.x - d.center.x) * (p.x - d.center.x) + (p.y - d.center.y) * (p.y - d.center.y);
    for (const Vec2& t : {t1, t2}) {
      const double orth = std::abs((t.x - d.center.x) * (t.x - p.x) + (t.y - d.center.y) * (t.y - p.y)) / scale;
      const double circ = std::abs(std::hypot(t.x - d.center.x, t.y - d.center.y) - d.radius) / d.radius;
      worst_orth = std::max(worst_orth, orth);
      worst_circ = std::max(worst_circ, circ);
      if (!(orth < 1e-9 && circ < 1e-9)) ++bad;
    }
  }
  return {bad == 0, fmt("10000 pairs, worst residuals %.1e / %.1e", worst_orth, worst_circ)};
}

AgentState agent(int id, Vec2 p, Vec2 v) {
  AgentState a;
  a.id = id;
  a.position = p;
  a.velocity = v;
  a.radius = 0.3;
  a.pref_speed = 1.0;
  return a;
}

Verdict orca_oracle() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> up(-3, 3), uv(-1, 1);
  int instances = 0, within = 0, lp_worse = 0;
  double worst = 0, worst_fine = 0;
  while (instances < 200) {
    const AgentState self = agent(0, {0, 0}, clamp_norm({uv(gen), uv(gen)}, 1.0));
    std::vector<AgentState> n;
    const int count = 1 + static_cast<int>(gen() % 4);
    for (int k = 1; k <= count; ++k) {
      const AgentState o = agent(k, {up(gen), up(gen)}, clamp_norm({uv(gen), uv(gen)}, 1.0));
      if (distance(o.position, self.position) > 0.6) n.push_back(o);
    }
    std::vector<orca::HalfPlane> lines;
    for (const auto& o : n) lines.push_back(orca::orca_halfplane(self, o, 2.0, 0.25));
    const Vec2 pref = clamp_norm({uv(gen), uv(gen)}, 1.0);
    if (!orca::is_feasible(lines, 1.0, pref)) continue;
    const auto oracle = testing::grid_oracle(lines, 1.0, pref);
    if (!oracle) continue;
    ++instances;
    const Vec2 v = orca::orca_velocity(self, n, pref, 2.0, 0.25, 1.0);
    const double d = distance(v, *oracle);
    worst = std::max(worst, d);
    if (d <= 0.02) {
      ++within;
    } else {
      // Diagnostics only: is the LP point worse than the lattice point, and
      // does a 10x finer lattice land next to it?
      if (distance(v, pref) > distance(*oracle, pref) + 1e-12) ++lp_worse;
      const auto fine = testing::grid_oracle(lines, 1.0, pref, 2001);
      worst_fine = std::max(worst_fine, distance(v, *fine));
    }
  }

  int collisions = 0;
  std::uniform_real_distribution<double> ud(1.5, 5), uy(-0.3, 0.3), ua(-3.14159, 3.14159);
  for (int run = 0; run < 100; ++run) {
    const double half = ud(gen), lat = uy(gen), th = ua(gen);
    const Vec2 axis{std::cos(th), std::sin(th)}, side = perp(axis);
    AgentState a = agent(1, axis * -half + side * lat, {});
    AgentState b = agent(2, axis * half - side * lat, {});
    const Vec2 goal_a = b.position, goal_b = a.position;
    double min_d = distance(a.position, b.position);
    for (int step = 0; step < 200; ++step) {
      // Arrive without overshooting the goal.
      auto pref = [](const AgentState& x, const Vec2& goal) {
        return clamp_norm((goal - x.position) / 0.25, 1.0);
      };
      const AgentState nb[] = {b};
      const AgentState na[] = {a};
      const Vec2 va = orca::orca_velocity(a, nb, pref(a, goal_a), 2.0, 0.25, 1.0);
      const Vec2 vb = orca::orca_velocity(b, na, pref(b, goal_b), 2.0, 0.25, 1.0);
      a.velocity = va;
      b.velocity = vb;
      a.position += va * 0.25;
      b.position += vb * 0.25;
      min_d = std::min(min_d, distance(a.position, b.position));
    }
    if (min_d < 0.6) ++collisions;
  }
  return {within == 200 && collisions == 0,
          fmt("%d/200 within 0.02 (worst %.4f; outliers: LP objective worse in %d, 2001^2 grid worst %.4f), "
              "%d/100 head-on collisions",
              within, worst, lp_worse, worst_fine, collisions)};
}

Verdict group_invariants() {
  bench::SuiteConfig suite;
  suite.scenario.terminate_on_group_intrusion = false;
  auto policy = bench::make_policy("orca", suite);
  int invalid = 0, steps = 0;
  double worst_growth = -1e9;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto run = bench::run_episode(suite.scenario, *policy, seed);
    std::istringstream in(testing::trace_text("orca", suite, run));
    const auto val = bench::validate_trace(in);
    if (!val.ok()) ++invalid;
    steps += val.steps;
    for (const auto& g : run.groups) {
      if (g.kind != sim::GroupKind::Dynamic) continue;
      for (int id : g.member_ids) {
        if (id == *g.leader_id) continue;
        const auto& s0 = run.steps.front();
        const double d0 = distance(s0.humans[id - 1].pos, s0.groups[g.group_id].centroid);
        for (const auto& s : run.steps) {
          worst_growth = std::max(worst_growth, distance(s.humans[id - 1].pos, s.groups[g.group_id].centroid) - d0);
        }
      }
    }
  }
  return {invalid == 0 && worst_growth <= 0.2,
          fmt("%d invalid traces over %d steps, worst follower growth %.3f m", invalid, steps, worst_growth)};
}

// Trace lines after the header, which names the policy.
std::string trace_body(const std::string& text) { return text.substr(text.find('\n') + 1); }

Verdict non_interference() {
  bench::SuiteConfig suite;
  suite.scenario.n_groups = 0;
  int differing = 0;
  for (const std::string base : {"orca", "sf"}) {
    auto plain = bench::make_policy(base, suite);
    auto wrapped = bench::make_policy(base + "+taga", suite);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = bench::run_episode(suite.scenario, *plain, seed);
      const auto b = bench::run_episode(suite.scenario, *wrapped, seed);
      if (trace_body(testing::trace_text(base, suite, a)) != trace_body(testing::trace_text(base, suite, b))) {
        ++differing;
      }
    }
  }
  return {differing == 0, fmt("%d/40 episode traces differ (orca, sf x 20 seeds)", differing)};
}

Verdict scripted_boundary() {
  bench::SuiteConfig suite;
  sim::ScenarioConfig c = suite.scenario;
  const sim::WorldState world = testing::scripted_static_group(c);
  const double r_g = world.groups[0].radius;
  const Vec2 centroid = world.groups[0].centroid;
  auto min_dist = [&](const bench::EpisodeRun& run) {
    double m = 1e9;
    for (const auto& s : run.steps) m = std::min(m, distance(s.robot_pos, centroid));
    return m;
  };
  auto taga = bench::make_policy("orca+taga", suite);
  auto orca = bench::make_policy("orca", suite);
  const auto with = bench::run_episode(world, c, *taga, 0);
  c.terminate_on_group_intrusion = false;
  const auto without = bench::run_episode(world, c, *orca, 0);
  const bool ok = with.report.outcome.kind == sim::OutcomeKind::Success && min_dist(with) >= r_g &&
                  min_dist(without) < r_g;
  return {ok, fmt("r_g %.3f; taga %s min %.3f; orca min %.3f", r_g,
                  std::string(sim::to_string(with.report.outcome.kind)).c_str(), min_dist(with),
                  min_dist(without))};
}

Verdict determinism(double& identity_worst, bool& identity_ok) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "groupnav_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ofstream(root / "suite.cfg") << "# default suite\nepisodes = 100\nseed = 1000\n";
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto suite = bench::load_suite((root / "suite.cfg").string());
    const fs::path out = root / ("run" + std::to_string(i));
    bench::run_benchmark(suite, out);
    std::ifstream in(out / "summary.csv");
    std::stringstream s;
    s << in.rdbuf();
    outputs[i] = s.str();
  }
  identity_ok = identity_holds(outputs[0], identity_worst) && identity_ok;
  fs::remove_all(root);
  return {!outputs[0].empty() && outputs[0] == outputs[1],
          fmt("summary.csv %zu bytes, reruns identical: %s", outputs[0].size(),
              outputs[0] == outputs[1] ? "yes" : "no")};
}

Verdict detection_accuracy() {
  bench::SuiteConfig suite;
  suite.scenario.terminate_on_group_intrusion = false;
  const auto& sc = suite.scenario;
  auto policy = bench::make_policy("orca", suite);
  long visible = 0, misses = 0, merges = 0, attached = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    sim::WorldState w = sim::generate_scenario(sc, seed);
    policy->reset();
    for (;;) {
      const auto obs = sim::observe(w, sc);
      const auto found = taga::detect_groups(obs, suite.taga);
      std::map<int, int> owner;
      for (const auto& g : w.groups) {
        for (int id : g.member_ids) owner[id] = g.group_id;
      }
      for (const auto& d : found) {
        std::set<int> groups;
        bool loose = false;
        for (int id : d.member_ids) {
          if (owner.count(id)) groups.insert(owner[id]); else loose = true;
        }
        if (groups.size() > 1) ++merges;
        if (loose && !groups.empty()) ++attached;
      }
      std::set<int> seen;
      for (const auto& h : obs.visible_humans) seen.insert(h.id);
      for (const auto& g : w.groups) {
        bool full = true;
        for (int id : g.member_ids) full = full && seen.count(id);
        if (!full) continue;
        ++visible;
        bool hit = false;
        for (const auto& d : found) hit = hit || d.member_ids == g.member_ids;
        if (!hit) ++misses;
      }
      auto r = sim::step_world(std::move(w), policy->act(obs), sc);
      w = std::move(r.world);
      if (r.outcome) break;
    }
  }
  const double rate = visible ? static_cast<double>(misses) / visible : 0.0;
  return {merges == 0 && rate <= 0.05,
          fmt("miss rate %.3f (%ld/%ld fully visible), %ld group merges, %ld with individuals attached",
              rate, misses, visible, merges, attached)};
}

}  // namespace

int main() {
  const bench::SuiteConfig suite;  // defaults: 100 episodes, 4 cells
  const auto t0 = std::chrono::steady_clock::now();
  const auto cells = bench::run_cells(suite);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  summary_text = bench::format_summary(suite, cells);
  std::cout << summary_text;

  report(1, "GCR reduction >= 50%", gcr_reduction(cells, seconds));
  report(2, "SR within 0.15 of base", sr_non_collapse(cells));
  double identity_worst = 0;
  bool identity_ok = identity_holds(summary_text, identity_worst);
  report(4, "tangent geometry residuals", tangent_suite());
  report(5, "ORCA vs grid oracle, head-on", orca_oracle());
  report(6, "group simulation invariants", group_invariants());
  report(7, "non-interference", non_interference());
  report(8, "scripted boundary respect", scripted_boundary());
  const Verdict det = determinism(identity_worst, identity_ok);
  report(3, "SR+CR+GCR+TR = 1", {identity_ok, fmt("worst |sum - 1| = %.1e over emitted summaries", identity_worst)});
  report(9, "rerun determinism", det);
  report(10, "group detection accuracy", detection_accuracy());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
