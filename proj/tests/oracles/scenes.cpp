// Copyright 2026 The Shuttle Nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenes.hpp"

#include <algorithm>
#include <cmath>

#include "shuttle/curve.hpp"

namespace shuttle::scenes {

namespace {

using geometry::Vec2;

double uni(world::Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }
int pick(world::Rng& rng, int n) {
  return std::min(n - 1, static_cast<int>(rng.uniform() * n));
}

}  // namespace

roadmap::RoadMap random_graph(world::Rng& rng, bool grid) {
  roadmap::RoadMap map;
  auto add_edge = [&map](int from, int to, std::vector<Vec2> poly) {
    roadmap::Edge e;
    e.id = static_cast<int>(map.edges.size());
    e.from = from;
    e.to = to;
    e.length = geometry::polyline_length(poly);
    e.polyline = std::move(poly);
    map.edges.push_back(std::move(e));
  };
  if (grid) {
    const int w = 3 + pick(rng, 4);
    const int h = 3 + pick(rng, 4);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) map.nodes.push_back({double(x), double(y)});
    }
    auto id = [w](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& dd : dirs) {
          const int nx = x + dd[0], ny = y + dd[1];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h || rng.uniform() < 0.2) continue;
          add_edge(id(x, y), id(nx, ny),
                   {map.nodes[id(x, y)], map.nodes[id(nx, ny)]});
          // Occasional parallel edge of equal length.
          if (rng.uniform() < 0.1) {
            add_edge(id(x, y), id(nx, ny), {map.nodes[id(x, y)], map.nodes[id(nx, ny)]});
          }
        }
      }
    }
  } else {
    const int n = 4 + pick(rng, 20);
    for (int i = 0; i < n; ++i) map.nodes.push_back({uni(rng, 0, 100), uni(rng, 0, 100)});
    const int m = n + pick(rng, 3 * n);
    for (int i = 0; i < m; ++i) {
      const int a = pick(rng, n);
      int b = pick(rng, n);
      if (a == b) b = (b + 1) % n;
      std::vector<Vec2> poly{map.nodes[a]};
      // Some edges bend, so the chord underestimates their length.
      if (rng.uniform() < 0.5) {
        const Vec2 mid = (map.nodes[a] + map.nodes[b]) * 0.5;
        poly.push_back(mid + Vec2{uni(rng, -10, 10), uni(rng, -10, 10)});
      }
      poly.push_back(map.nodes[b]);
      add_edge(a, b, std::move(poly));
    }
  }
  if (map.edges.empty()) add_edge(0, 1, {map.nodes[0], map.nodes[1]});
  for (int i = 0; i < 2; ++i) {
    const auto& e = map.edges[static_cast<std::size_t>(pick(rng, int(map.edges.size())))];
    map.stations["S" + std::to_string(i)] = {e.id, uni(rng, 0.0, e.length)};
  }
  return map;
}

frenet::FrenetFrame random_frame(world::Rng& rng, double length, double max_kappa) {
  const double kappa = rng.uniform() < 0.4 ? 0.0 : uni(rng, -max_kappa, max_kappa);
  const double heading = uni(rng, -M_PI, M_PI);
  const Vec2 origin{uni(rng, -50, 50), uni(rng, -50, 50)};
  auto sampler = [&](double s) {
    if (std::abs(kappa) < 1e-9) return origin + geometry::unit_from_heading(heading) * s;
    const double r = 1.0 / kappa;
    const Vec2 centre = origin + geometry::unit_from_heading(heading).perp() * r;
    const double ang = heading - M_PI / 2.0 + s * kappa;
    return centre + geometry::unit_from_heading(ang) * r;
  };
  const double ds = frenet::kDefaultSampleSpacing;
  const auto count = static_cast<std::size_t>(std::round(length / ds)) + 1;
  frenet::FrenetFrame frame;
  frame.curve = geometry::Curve::from_sampler(sampler, count, ds);
  frame.s_max = frame.curve.length();
  frame.tags.assign(frame.size(), roadmap::ScenarioTag::kCommon);
  frame.speed_limits.assign(frame.size(), roadmap::kMaxRouteSpeed);
  return frame;
}

behavior::BehaviorContext random_behavior_scene(world::Rng& rng,
                                                const frenet::FrenetFrame& frame,
                                                int max_obstacles, int max_agents) {
  behavior::BehaviorContext ctx;
  ctx.frame = &frame;
  ctx.cfg.rate_limit = false;
  const int tag = pick(rng, 3);
  ctx.scn = behavior::scenario_preset(static_cast<roadmap::ScenarioTag>(tag));
  ctx.scn.band = rng.uniform() < 0.5 ? 0.75 : 0.5;
  ctx.scn.lane_change_allowed = rng.uniform() < 0.7;
  ctx.d0 = uni(rng, -0.8, 0.8);
  ctx.ego_speed = uni(rng, 0.0, 4.0);

  const int n_obs = pick(rng, max_obstacles + 1);
  for (int i = 0; i < n_obs; ++i) {
    const double s = uni(rng, 2.0, frame.s_max);
    const double d = uni(rng, -4.0, 4.0);
    const geometry::OrientedBox box{frame.point_at(s, d), frame.heading_at(s) + uni(rng, -0.5, 0.5),
                                    uni(rng, 0.4, 4.0), uni(rng, 0.4, 2.0)};
    ctx.static_obstacles.push_back(box.corners());
  }
  const int n_agents = pick(rng, max_agents + 1);
  for (int i = 0; i < n_agents; ++i) {
    world::AgentState a;
    a.id = i + 1;
    a.cls = world::AgentClass::kPedestrian;
    const double s = uni(rng, 0.0, frame.s_max);
    a.position = frame.point_at(s, uni(rng, -10.0, 10.0));
    const double heading = uni(rng, -M_PI, M_PI);
    a.heading = heading;
    a.velocity = geometry::unit_from_heading(heading) * uni(rng, 0.3, 2.0);
    ctx.predictions.push_back(world::predict_cv(a));
  }
  return ctx;
}

std::unique_ptr<PlanningScene> random_planning_scene(world::Rng& rng) {
  auto scene = std::make_unique<PlanningScene>();
  scene->frame = std::make_unique<frenet::FrenetFrame>(random_frame(rng, 40.0, 0.25));
  auto ctx = random_behavior_scene(rng, *scene->frame, 3, 2);
  // Keep the ego start clear of obstacles.
  std::erase_if(ctx.static_obstacles, [&](const geometry::Polygon& p) {
    const auto box = frenet::ego_box_at(scene->frame->curve, 0.0, ctx.d0, ctx.ego);
    return geometry::polygon_distance(box.corners(), p) < 1.0;
  });
  behavior::BehaviorPlanner planner;
  const roadmap::TaskState task;
  auto ref = planner.select_reference(ctx, task, 0.0, 0.0);
  if (!ref.ok()) return nullptr;
  scene->ref = std::make_unique<behavior::ReferenceRoute>(*std::move(ref));
  if (rng.uniform() < 0.3) scene->ref->destination_s = uni(rng, 5.0, scene->frame->s_max);

  auto& in = scene->input;
  in.ref = scene->ref.get();
  in.d0 = ctx.d0;
  in.heading_error = uni(rng, -0.1, 0.1);
  in.v0 = uni(rng, 0.0, 4.0);
  in.a0 = 0.0;
  in.static_obstacles = ctx.static_obstacles;
  in.ego = ctx.ego;
  in.inflation = ctx.scn.inflation;
  for (const auto& p : ctx.predictions) {
    world::AgentState a;
    a.id = p.agent_id;
    a.position = p.positions.front();
    a.heading = p.heading;
    a.length = p.length;
    a.width = p.width;
    if (p.positions.size() > 1) a.velocity = (p.positions[1] - p.positions[0]) * (1.0 / p.dt);
    in.agents.push_back(a);
    in.predictions.push_back(world::predict_cv(a, motion::kMotionPredictionHorizon));
  }
  return scene;
}

SpeedInstance random_speed_instance(world::Rng& rng, double horizon, bool constant_limit) {
  SpeedInstance in;
  motion::StGraphParams gp;
  gp.horizon = horizon;
  const double s_end = uni(rng, 8.0, 40.0);
  in.graph = motion::StGraph(gp, s_end);
  in.v0 = std::floor(uni(rng, 0.0, 4.0) * 64.0) / 64.0;
  const int blocks = pick(rng, 3);
  for (int b = 0; b < blocks; ++b) {
    // An agent crossing the path ahead for a few columns.
    const double lo = uni(rng, 4.0, s_end + 5.0);
    const double hi = lo + uni(rng, 1.0, 6.0);
    const int c0 = pick(rng, static_cast<int>(in.graph.columns()));
    const int c1 = std::min<int>(c0 + 1 + pick(rng, 6), static_cast<int>(in.graph.columns()));
    for (int c = c0; c < c1; ++c) in.graph.block(static_cast<std::size_t>(c), lo, hi);
  }
  in.limits.ds = gp.ds;
  const auto n = static_cast<std::size_t>(std::ceil(s_end / gp.ds)) + 1;
  const double cap = uni(rng, 1.0, 4.17);
  in.limits.limits.assign(n, cap);
  in.limits.ramp.assign(n, false);
  if (!constant_limit) {
    // A slow zone, as behind a curve or near a pedestrian.
    const auto z0 = static_cast<std::size_t>(pick(rng, static_cast<int>(n)));
    const auto z1 = std::min(n, z0 + 4 + static_cast<std::size_t>(pick(rng, 20)));
    const double slow = uni(rng, 0.5, cap);
    for (std::size_t i = z0; i < z1; ++i) in.limits.limits[i] = slow;
  }
  if (rng.uniform() < 0.4) in.stop_s = s_end;
  return in;
}

}  // namespace shuttle::scenes
