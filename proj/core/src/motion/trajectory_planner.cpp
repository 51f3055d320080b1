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

#include "shuttle/motion/trajectory_planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace shuttle::motion {

namespace {

bool vulnerable(const world::AgentState& a) {
  return a.cls == world::AgentClass::kPedestrian || a.cls == world::AgentClass::kCyclist;
}

std::size_t frame_index(const frenet::FrenetFrame& frame, double s) {
  const double x = std::max(0.0, s) / frame.ds();
  return std::min(static_cast<std::size_t>(std::lround(x)), frame.size() - 1);
}

std::vector<TrajectoryPoint> sample(const geometry::Curve& curve, double d,
                                    const SpeedProfile& profile, double horizon, double dt) {
  std::vector<TrajectoryPoint> pts;
  const auto n = static_cast<int>(std::round(horizon / dt));
  for (int i = 0; i <= n; ++i) {
    const double t = dt * i;
    const double s = std::min(profile.s_at(t), curve.length());
    TrajectoryPoint p;
    p.t = t;
    p.s = s;
    const auto pos = curve.point_at(s, d);
    p.x = pos.x;
    p.y = pos.y;
    p.heading = curve.heading_at(s);
    p.kappa = curve.kappa_at(s);
    p.v = std::max(0.0, profile.v_at(t));
    p.a = profile.a_at(t);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

std::vector<double> sample_limits(const Path& path, const PlanningInput& in,
                                  const SpeedLimitConfig& cfg) {
  const auto& ref = *in.ref;
  std::vector<const world::AgentState*> vrus;
  for (const auto& a : in.agents) {
    if (vulnerable(a)) vrus.push_back(&a);
  }
  std::vector<double> out;
  out.reserve(path.curve.size());
  for (std::size_t k = 0; k < path.curve.size(); ++k) {
    const auto& smp = path.curve[k];
    const std::size_t fi = frame_index(ref.frame, path.frame_s[k]);
    double lim = ref.speed_cap;
    if (fi < ref.frame.speed_limits.size()) lim = std::min(lim, ref.frame.speed_limits[fi]);
    if (const auto kl = curvature_speed_limit(smp.kappa, cfg.a_lat)) lim = std::min(lim, *kl);
    if (!vrus.empty()) {
      const auto box = frenet::ego_box_at(path.curve, smp.s, 0.0, in.ego).corners();
      double c = std::numeric_limits<double>::infinity();
      for (const auto* a : vrus) {
        if (geometry::distance(a->position, smp.position) > cfg.delta_max + in.ego.length + 2.0) {
          continue;
        }
        c = std::min(c, geometry::polygon_distance(box, a->footprint().corners()));
      }
      if (std::isfinite(c)) lim = std::min(lim, clearance_speed_limit(c, cfg));
    }
    out.push_back(lim);
  }
  return out;
}

Trajectory emergency_stop(const geometry::Curve& curve, double d, double v0,
                          const PlannerConfig& config, const std::string& reason) {
  const double decel = config.emergency_decel;
  const double t_stop = std::max(0.0, v0) / decel;
  std::vector<CubicSegment> segs{{0.0, t_stop, 0.0, std::max(0.0, v0), -decel, 0.0}};
  Trajectory traj;
  traj.profile = SpeedProfile(std::move(segs));
  traj.points = sample(curve, d, traj.profile, config.graph.horizon, config.sample_dt);
  traj.diagnostics.emergency = true;
  traj.diagnostics.failure = reason;
  return traj;
}

Trajectory plan_trajectory(const PlanningInput& in, const PlannerConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto& ref = *in.ref;
  const auto& frame = ref.frame;
  const std::optional<double> stop = ref.terminal_stop();

  PathRequest req;
  req.frame = &frame;
  req.target_offset = ref.d_t;
  req.start_offset = in.d0;
  req.start_slope = std::tan(std::clamp(in.heading_error, -1.2, 1.2));
  req.obstacles = in.static_obstacles;
  req.inflation = in.inflation;
  req.ego = in.ego;
  req.obstacle_horizon = stop ? *stop : frame.s_max;
  req.curvature_caps.assign(frame.size(), cfg.path.kappa_max);

  std::vector<double> tighten;
  std::string failure = "no iterations";
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (it > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > cfg.budget_s) break;
    }
    Path path = generate_path(req, cfg.path);
    const double s_end =
        std::clamp(stop ? path.path_s_at(*stop) : path.length(), 0.0, path.length());

    auto limits = sample_limits(path, in, cfg.limits);
    if (tighten.size() != limits.size()) tighten.assign(limits.size(), 1.0);
    std::vector<bool> ramp(limits.size(), false);
    for (std::size_t k = 0; k < limits.size(); ++k) {
      limits[k] *= tighten[k];
      const double floor_v =
          std::sqrt(std::max(0.0, in.v0 * in.v0 - 2.0 * cfg.ramp_decel * path.curve[k].s));
      if (limits[k] < floor_v) {
        limits[k] = floor_v;
        ramp[k] = true;
      }
    }
    const LimitTrack track{path.curve.ds(), limits, ramp};

    const StGraph graph =
        build_st_graph(path.curve, s_end, in.predictions, in.ego,
                       0.5 * in.ego.width + in.inflation, cfg.graph);
    const auto coarse = search_speed(graph, track, 0.0, std::max(0.0, in.v0), cfg.search);
    if (!coarse.ok()) {
      failure = std::string(coarse.status().message());
      continue;
    }
    const auto refined = refine_speed(*coarse, in.a0, graph, track,
                                      stop ? std::optional<double>(s_end) : std::nullopt,
                                      cfg.qp);

    Trajectory traj;
    traj.profile = refined.profile;
    traj.points = sample(path.curve, 0.0, traj.profile, cfg.graph.horizon, cfg.sample_dt);
    auto& diag = traj.diagnostics;
    diag.qp_refined = refined.refined;
    diag.s_end = s_end;

    // Feasibility on the sampled trajectory.
    bool ok = true;
    for (const auto& p : traj.points) {
      if (p.t == 0.0) continue;
      const auto idx = std::min(static_cast<std::size_t>(p.s / path.curve.ds()),
                                limits.size() - 1);
      const bool lateral = p.v * p.v * std::abs(p.kappa) > cfg.limits.a_lat + cfg.tolerance;
      const bool accel = std::abs(p.a) > cfg.qp.a_max + cfg.tolerance;
      const bool speed = !ramp[idx] && p.v > track.at(p.s) + cfg.tolerance;
      if (!(lateral || accel || speed)) continue;
      ok = false;
      failure = lateral ? "lateral acceleration" : accel ? "acceleration" : "speed limit";
      for (std::size_t k = 0; k < tighten.size(); ++k) {
        if (std::abs(path.curve[k].s - p.s) <= cfg.tighten_radius) {
          tighten[k] *= cfg.tighten_factor;
        }
      }
      if (lateral && p.v > 0.0) {
        const double cap = cfg.limits.a_lat / (p.v * p.v);
        const double fs = path.frame_s_at(p.s);
        for (std::size_t k = 0; k < frame.size(); ++k) {
          if (std::abs(frame.curve[k].s - fs) <= cfg.tighten_radius) {
            req.curvature_caps[k] = std::min(req.curvature_caps[k], cap);
          }
        }
      }
    }
    diag.iterations = it + 1;
    diag.limits = std::move(limits);
    diag.ramp_relaxed = std::move(ramp);
    if (ok) {
      diag.accepted = true;
      traj.path = std::move(path);
      return traj;
    }
  }

  Trajectory fallback = emergency_stop(frame.curve, in.d0, in.v0, cfg, failure);
  fallback.diagnostics.iterations = it;
  return fallback;
}

}  // namespace shuttle::motion
