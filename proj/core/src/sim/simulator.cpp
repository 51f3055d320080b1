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

#include "shuttle/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "shuttle/sim/announce.hpp"

namespace shuttle::sim {

namespace {

using geometry::Vec2;

constexpr double kStaticSpeed = 0.3;
constexpr double kCurbRange = 15.0;
constexpr double kLineLookBehind = 1.0;

std::string_view phase_name(roadmap::TaskPhase p) {
  switch (p) {
    case roadmap::TaskPhase::kDriving:
      return "driving";
    case roadmap::TaskPhase::kDwelling:
      return "dwelling";
    case roadmap::TaskPhase::kIdle:
      return "idle";
  }
  return "driving";
}

std::string_view gate_name(behavior::GateDecision g) {
  switch (g) {
    case behavior::GateDecision::kNotApplicable:
      return "none";
    case behavior::GateDecision::kProceed:
      return "proceed";
    case behavior::GateDecision::kStopAtLine:
      return "stop_at_line";
  }
  return "none";
}

geometry::Curve route_curve(const roadmap::GlobalRoute& route) {
  constexpr double ds = 0.5;
  const auto n = static_cast<std::size_t>(std::floor(route.length() / ds)) + 1;
  return geometry::Curve::from_sampler([&route](double s) { return route.position_at(s); },
                                       std::max<std::size_t>(n, 2), ds);
}

geometry::OrientedBox ego_box(const control::VehicleState& x, const frenet::EgoDims& ego) {
  const Vec2 c = Vec2{x.x, x.y} + geometry::unit_from_heading(x.theta) * ego.center_offset;
  return {c, x.theta, ego.length, ego.width};
}

class Simulation {
 public:
  Simulation(const Scenario& sc, const RunOptions& opt)
      : sc_(sc), opt_(opt), cfg_(effective_config(sc, opt)),
        seed_(opt.seed.value_or(sc.seed)), rng_(seed_), planner_(cfg_.governor) {
    noise_ = sc.noise;
    noise_.seed = seed_;
    pending_.assign(sc.stops.begin(), sc.stops.end());
    pending_.push_back(sc.goal);
    const std::string first = pending_.front();
    pending_.pop_front();
    auto route = roadmap::plan_global_route(sc.map, {sc.ego.edge, sc.ego.s}, first);
    if (!route.ok()) {
      throw ScenarioError({"no route to '" + first + "': " + std::string(route.status().message())});
    }
    set_route(*std::move(route));
    route_s_ = route_.start_s;
    const Vec2 p = route_curve_.point_at(route_s_, sc.ego.d);
    state_ = {p.x, p.y, route_curve_.heading_at(route_s_), sc.ego.v, 0.0};
    log_.scenario = sc.name;
    log_.seed = seed_;
    log_.control_dt = cfg_.control_dt;
  }

  SimLog run() {
    const double dt = cfg_.control_dt;
    const auto steps = static_cast<long>(std::floor(sc_.duration / dt + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) * dt;
      if (tick(t, k)) {
        return std::move(log_);
      }
    }
    log_.status = TerminalStatus::kTimeout;
    log_.reason = "duration cap reached";
    return std::move(log_);
  }

 private:
  void set_route(roadmap::GlobalRoute route) {
    route_ = std::move(route);
    route_curve_ = route_curve(route_);
  }

  void event(double t, std::string type, std::string detail = {}) {
    log_.events.push_back({t, std::move(type), std::move(detail)});
  }

  // Returns true when the run terminates at this tick.
  bool tick(double t, long k) {
    std::vector<world::AgentState> truth;
    for (const auto& a : sc_.agents) truth.push_back(a.state_at(t));
    const auto box = ego_box(state_, cfg_.ego).corners();

    std::optional<double> ped_clearance;
    bool collided = false;
    for (const auto& a : truth) {
      const auto fp = a.footprint().corners();
      if (geometry::intersects(box, fp)) collided = true;
      if (a.cls == world::AgentClass::kPedestrian) {
        const double c = geometry::polygon_distance(box, fp);
        ped_clearance = ped_clearance ? std::min(*ped_clearance, c) : c;
      }
    }

    route_s_ = std::clamp(route_curve_.project({state_.x, state_.y}).s, 0.0, route_.length());

    for (const auto& ev : sc_.events) {
      if (ev.t >= t - 1e-9 && ev.t < t + cfg_.control_dt - 1e-9) handle_button(t);
    }

    bool departed = false;
    bool terminate = false;
    if (task_.phase == roadmap::TaskPhase::kDriving) {
      if (route_s_ >= route_.goal_s - cfg_.goal_tolerance && state_.v < cfg_.stopped_speed) {
        event(t, "arrived", route_.destination);
        if (pending_.empty() && !route_.original_destination) {
          log_.status = TerminalStatus::kGoalReached;
          log_.reason = "reached " + route_.destination;
          terminate = true;
        } else {
          task_.phase = roadmap::TaskPhase::kDwelling;
          task_.dwell_timer = 0.0;
          event(t, "dwell_start", route_.destination);
        }
      }
    } else if (task_.phase == roadmap::TaskPhase::kDwelling) {
      const geometry::OrientedBox ob = ego_box(state_, cfg_.ego);
      if (roadmap::resume_check(task_, ob, truth, cfg_.control_dt)) {
        std::string next;
        if (route_.original_destination) {
          next = *route_.original_destination;
        } else {
          next = pending_.front();
          pending_.pop_front();
        }
        const auto from = route_.edge_position_at(route_s_);
        auto nr = roadmap::plan_global_route(sc_.map, from, next);
        if (nr.ok()) {
          set_route(*std::move(nr));
          route_s_ = route_.start_s;
          task_.phase = roadmap::TaskPhase::kDriving;
          departed = true;
          event(t, "depart", next);
        } else {
          event(t, "route_failure", std::string(nr.status().message()));
          log_.status = TerminalStatus::kSafetyStop;
          log_.reason = "no route to " + next;
          terminate = true;
        }
      }
    }

    if (!terminate && (k % cfg_.plan_every == 0 || !have_plan_)) plan(t, truth);

    // Control.
    control::ControlCommand cmd;
    if (!terminate) {
      const auto ref = control::reference_from(trajectory_, t - plan_time_, cfg_.mpc, cfg_.vehicle);
      const auto res =
          control::mpc_track(state_, ref, last_cmd_, emergency_, cfg_.mpc, cfg_.vehicle);
      cmd = res.command;
      if (cmd.solver_failure) {
        if (!solver_failed_) event(t, std::string(kSolverFailureEvent), "mpc");
        solver_failed_ = true;
      } else {
        solver_failed_ = false;
      }
    }

    AnnounceContext actx;
    actx.t = t;
    actx.departed = departed;
    actx.yielding = gate_ == behavior::GateDecision::kStopAtLine;
    actx.pedestrian_clearance = ped_clearance;
    actx.speed = state_.v;
    if (task_.phase == roadmap::TaskPhase::kDriving && state_.v > cfg_.stopped_speed) {
      actx.distance_to_station = route_.goal_s - route_s_;
    }
    const auto said = announcer_.announce(actx);

    TickRecord rec;
    rec.t = t;
    rec.x = state_.x;
    rec.y = state_.y;
    rec.theta = state_.theta;
    rec.v = state_.v;
    rec.steer = state_.steer;
    rec.accel_cmd = cmd.accel;
    rec.steer_cmd = cmd.steer;
    rec.route_s = route_s_;
    rec.d_t = d_t_;
    rec.truncated = truncated_;
    rec.gate = std::string(gate_name(gate_));
    rec.speed_limit = active_limit_;
    rec.localization_error = world::localization_error_at(sc_.localization, t);
    rec.pedestrian_clearance = ped_clearance;
    rec.emergency = emergency_ || cmd.solver_failure;
    rec.phase = std::string(phase_name(task_.phase));
    for (auto a : said) rec.announcements.emplace_back(to_string(a));
    log_.ticks.push_back(std::move(rec));

    if (collided) {
      event(t, std::string(kCollisionEvent));
      log_.status = TerminalStatus::kSafetyStop;
      log_.reason = "collision";
      return true;
    }
    if (terminate) return true;
    if (blocked_since_ && t - *blocked_since_ > cfg_.all_blocked_timeout) {
      log_.status = TerminalStatus::kSafetyStop;
      log_.reason = "blocked longer than timeout";
      return true;
    }

    const double h = cfg_.control_dt / cfg_.substeps;
    for (int i = 0; i < cfg_.substeps; ++i) state_ = control::bicycle_step(state_, cmd, h, cfg_.vehicle);
    last_cmd_ = cmd;
    last_cmd_.solver_failure = false;
    return false;
  }

  void handle_button(double t) {
    auto next = roadmap::truncate_route(route_, sc_.map, task_, route_s_);
    if (next.goal_s == route_.goal_s && next.destination == route_.destination) {
      event(t, "dropoff_ignored");
      return;
    }
    event(t, "dropoff", next.destination);
    // The interrupted destination is resumed after the drop-off dwell.
    if (!next.original_destination) next.original_destination = route_.destination;
    set_route(std::move(next));
  }

  void plan(double t, const std::vector<world::AgentState>& truth) {
    have_plan_ = true;
    plan_time_ = t;
    const auto& planner_cfg = cfg_.planner;
    auto frame_or = frenet::build_frame(route_, route_s_, cfg_.behavior.window);
    if (!frame_or.ok()) {
      stop_in_place(t, "frame: " + std::string(frame_or.status().message()));
      return;
    }
    frenet::FrenetFrame frame = *std::move(frame_or);
    for (std::size_t i = 0; i < frame.size(); ++i) {
      frame.speed_limits[i] = std::min(frame.speed_limits[i],
                                       behavior::scenario_preset(frame.tags[i]).reference_speed);
    }

    const auto detections = world::sense(truth, noise_, rng_);
    const auto curbs = world::jitter_boundaries(sc_.map.curbs, noise_.boundary_jitter, t);
    const Vec2 here{state_.x, state_.y};

    behavior::BehaviorContext ctx;
    ctx.frame = &frame;
    ctx.cfg = cfg_.behavior;
    ctx.scn = behavior::scenario_preset(frame.tags.front());
    ctx.ego = cfg_.ego;
    ctx.ego_speed = state_.v;
    const double reach = frame.s_max + kCurbRange;
    for (const auto& c : curbs) {
      const auto bb = geometry::bounding_box(c);
      const geometry::Aabb me{here.x, here.y, here.x, here.y};
      if (bb.gap(me) <= reach) ctx.static_obstacles.push_back(c);
    }
    std::vector<world::PredictedTrajectory> long_preds;
    std::vector<world::AgentState> vrus;
    for (const auto& a : detections) {
      if (geometry::distance(a.position, here) > reach + 20.0) continue;
      vrus.push_back(a);
      if (a.speed() < kStaticSpeed) {
        ctx.static_obstacles.push_back(a.footprint().corners());
      } else {
        ctx.predictions.push_back(world::predict_cv(a, world::kDefaultPredictionHorizon));
        long_preds.push_back(world::predict_cv(a, motion::kMotionPredictionHorizon));
      }
    }

    const auto cp = frame.curve.project(here);
    const double heading_error =
        geometry::normalize_angle(state_.theta - frame.heading_at(std::max(0.0, cp.s)));
    const double d_bound = ctx.scn.band + cfg_.behavior.candidate_spacing;
    ctx.d0 = std::clamp(cp.d, -d_bound, d_bound);
    if (route_.goal_s - route_s_ <= frame.s_max) ctx.destination_s = route_.goal_s - route_s_;

    for (int edge : route_.edge_ids) {
      auto line = sc_.map.stop_lines.find(edge);
      if (line == sc_.map.stop_lines.end()) continue;
      const auto rs = route_.route_s(edge, line->second);
      if (!rs) continue;
      const double rel = *rs - route_s_;
      if (rel < -kLineLookBehind || rel > frame.s_max) continue;
      behavior::IntersectionInfo info;
      info.stop_line_s = rel;
      if (auto areas = sc_.map.observation_areas.find(edge);
          areas != sc_.map.observation_areas.end()) {
        info.areas = areas->second;
      }
      ctx.intersection = std::move(info);
      break;
    }

    const double loc_err = world::localization_error_at(sc_.localization, t);
    auto ref = planner_.select_reference(ctx, task_, loc_err, t);
    if (!ref.ok()) {
      if (behavior::is_all_blocked(ref.status())) {
        if (!blocked_since_) {
          blocked_since_ = t;
          event(t, std::string(kAllBlockedEvent));
        }
      } else {
        event(t, "behavior_error", std::string(ref.status().message()));
      }
      stop_in_place(t, std::string(ref.status().message()), &frame, cp.d);
      return;
    }
    blocked_since_.reset();
    d_t_ = ref->d_t;
    truncated_ = ref->truncated;
    gate_ = ref->gate;

    if (task_.phase == roadmap::TaskPhase::kDwelling) {
      // Parked at the station: hold still at a comfortable deceleration.
      auto hold_cfg = planner_cfg;
      hold_cfg.emergency_decel = cfg_.planner.search.accel_step;
      trajectory_ = motion::emergency_stop(frame.curve, cp.d, state_.v, hold_cfg, {});
      trajectory_.diagnostics.emergency = false;
      emergency_ = false;
      active_limit_ = 0.0;
      return;
    }

    motion::PlanningInput in;
    in.ref = &*ref;
    in.d0 = cp.d;
    in.heading_error = heading_error;
    in.v0 = state_.v;
    in.a0 = last_cmd_.accel;
    in.static_obstacles = ctx.static_obstacles;
    in.agents = vrus;
    in.predictions = long_preds;
    in.ego = cfg_.ego;
    in.inflation = ctx.scn.inflation;
    trajectory_ = motion::plan_trajectory(in, planner_cfg);
    const bool was_emergency = emergency_;
    emergency_ = trajectory_.diagnostics.emergency;
    if (emergency_ && !was_emergency) {
      event(t, "planner_emergency", trajectory_.diagnostics.failure);
    }
    active_limit_ = trajectory_.diagnostics.limits.empty() ? 0.0
                                                           : trajectory_.diagnostics.limits.front();
    if (opt_.on_plan) opt_.on_plan({t, &*ref, &in, &trajectory_, &planner_cfg});
  }

  void stop_in_place(double t, const std::string& why, const frenet::FrenetFrame* frame = nullptr,
                     double d = 0.0) {
    (void)t;
    if (frame != nullptr) {
      trajectory_ = motion::emergency_stop(frame->curve, d, state_.v, cfg_.planner, why);
    } else {
      const Vec2 p{state_.x, state_.y};
      const std::vector<Vec2> pts{p, p + geometry::unit_from_heading(state_.theta) * 20.0};
      trajectory_ = motion::emergency_stop(geometry::Curve::from_polyline(pts, 0.5), 0.0,
                                           state_.v, cfg_.planner, why);
    }
    emergency_ = true;
    active_limit_ = 0.0;
  }

  const Scenario& sc_;
  const RunOptions& opt_;
  StackConfig cfg_;
  std::uint64_t seed_;
  world::Rng rng_;
  world::DetectionNoise noise_;
  behavior::BehaviorPlanner planner_;
  Announcer announcer_;
  std::deque<std::string> pending_;
  roadmap::GlobalRoute route_;
  geometry::Curve route_curve_;
  double route_s_{0.0};
  roadmap::TaskState task_;
  control::VehicleState state_;
  control::ControlCommand last_cmd_;
  motion::Trajectory trajectory_;
  double plan_time_{0.0};
  bool have_plan_{false};
  bool emergency_{false};
  bool solver_failed_{false};
  std::optional<double> blocked_since_;
  double d_t_{0.0};
  bool truncated_{false};
  behavior::GateDecision gate_{behavior::GateDecision::kNotApplicable};
  double active_limit_{0.0};
  SimLog log_;
};

}  // namespace

StackConfig effective_config(const Scenario& scenario, const RunOptions& options) {
  StackConfig cfg;
  // Planning in simulation is deterministic: wall-clock budget never cuts an
  // iteration short.
  cfg.planner.budget_s = 1e9;
  apply_config(cfg, scenario.config_overrides);
  apply_config(cfg, options.config);
  return cfg;
}

SimLog run_scenario(const Scenario& scenario, const RunOptions& options) {
  Simulation sim(scenario, options);
  return sim.run();
}

}  // namespace shuttle::sim
