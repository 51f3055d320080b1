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

#include "shuttle/sim/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace shuttle::sim {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid scenario";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

using Field = std::variant<double*, int*, bool*>;
using Section = std::map<std::string, Field>;

std::map<std::string, Section> config_sections(StackConfig& c) {
  auto& b = c.behavior;
  auto& g = c.governor;
  auto& p = c.planner;
  auto& m = c.mpc;
  return {
      {"behavior",
       {{"w_s", &b.w_s}, {"w_d1", &b.w_d1}, {"w_d2", &b.w_d2}, {"w_o1", &b.w_o1},
        {"w_o2", &b.w_o2}, {"dynamic_penalty", &b.dynamic_penalty},
        {"candidate_spacing", &b.candidate_spacing},
        {"lane_change_threshold", &b.lane_change_threshold},
        {"planning_frequency", &b.planning_frequency}, {"window", &b.window},
        {"truncation_margin", &b.truncation_margin}, {"clearance_floor", &b.clearance_floor},
        {"rate_limit", &b.rate_limit}}},
      {"governor",
       {{"v_max", &g.v_max}, {"e_lo", &g.e_lo}, {"e_hi", &g.e_hi}, {"v_crawl", &g.v_crawl}}},
      {"limits",
       {{"a_lat", &p.limits.a_lat}, {"delta_min", &p.limits.delta_min},
        {"delta_mdn", &p.limits.delta_mdn}, {"delta_max", &p.limits.delta_max},
        {"v_min", &p.limits.v_min}, {"v_mdn", &p.limits.v_mdn}, {"v_max", &p.limits.v_max}}},
      {"path",
       {{"w_prior", &p.path.w_prior}, {"w_smooth", &p.path.w_smooth},
        {"w_init", &p.path.w_init}, {"w_obstacle", &p.path.w_obstacle},
        {"buffer", &p.path.buffer}, {"w_curvature", &p.path.w_curvature},
        {"kappa_max", &p.path.kappa_max}, {"max_iterations", &p.path.max_iterations},
        {"tolerance", &p.path.tolerance}}},
      {"graph", {{"ds", &p.graph.ds}, {"dt", &p.graph.dt}, {"horizon", &p.graph.horizon},
        {"margin", &p.graph.margin}}},
      {"search",
       {{"accel_step", &p.search.accel_step}, {"accel_levels", &p.search.accel_levels},
        {"w_progress", &p.search.w_progress}, {"w_accel", &p.search.w_accel},
        {"limit_margin", &p.search.limit_margin}}},
      {"qp",
       {{"w_ref", &p.qp.w_ref}, {"a_max", &p.qp.a_max},
        {"collocation_dt", &p.qp.collocation_dt}, {"stop_capture", &p.qp.stop_capture}}},
      {"planner",
       {{"max_iterations", &p.max_iterations}, {"budget_s", &p.budget_s},
        {"ramp_decel", &p.ramp_decel}, {"tolerance", &p.tolerance},
        {"tighten_factor", &p.tighten_factor}, {"tighten_radius", &p.tighten_radius},
        {"emergency_decel", &p.emergency_decel}, {"sample_dt", &p.sample_dt}}},
      {"mpc",
       {{"horizon", &m.horizon}, {"dt", &m.dt}, {"linearizations", &m.linearizations},
        {"q_lateral", &m.q_lateral}, {"q_longitudinal", &m.q_longitudinal},
        {"q_heading", &m.q_heading}, {"q_speed", &m.q_speed}, {"r_accel", &m.r_accel},
        {"r_steer", &m.r_steer}, {"r_accel_rate", &m.r_accel_rate},
        {"r_steer_rate", &m.r_steer_rate}, {"max_steer_rate", &m.max_steer_rate},
        {"max_jerk", &m.max_jerk}, {"emergency_jerk", &m.emergency_jerk},
        {"creep_gain", &m.creep_gain}}},
      {"vehicle",
       {{"wheelbase", &c.vehicle.wheelbase}, {"max_steer", &c.vehicle.max_steer},
        {"max_accel", &c.vehicle.max_accel}}},
      {"ego",
       {{"length", &c.ego.length}, {"width", &c.ego.width},
        {"center_offset", &c.ego.center_offset}}},
      {"sim",
       {{"control_dt", &c.control_dt}, {"plan_every", &c.plan_every},
        {"substeps", &c.substeps}, {"all_blocked_timeout", &c.all_blocked_timeout},
        {"goal_tolerance", &c.goal_tolerance}, {"stopped_speed", &c.stopped_speed}}},
  };
}

void check_config(const StackConfig& c, std::vector<std::string>& errors) {
  try {
    motion::validate(c.planner.limits);
  } catch (const std::invalid_argument& e) {
    errors.push_back(std::string("config.limits: ") + e.what());
  }
  if (c.mpc.horizon < 2 || !(c.mpc.dt > 0.0)) {
    errors.push_back("config.mpc: horizon must be >= 2 and dt > 0");
  }
  if (!(c.control_dt > 0.0) || c.plan_every < 1 || c.substeps < 1) {
    errors.push_back("config.sim: control_dt > 0, plan_every >= 1 and substeps >= 1");
  }
  if (c.planner.max_iterations < 1) errors.push_back("config.planner.max_iterations < 1");
  if (!(c.planner.graph.dt > 0.0) || !(c.planner.graph.horizon > 0.0)) {
    errors.push_back("config.graph: dt and horizon must be positive");
  }
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  const json* member(const json& obj, const std::string& key, const std::string& path,
                     bool required = true) {
    if (!obj.is_object()) {
      errors_.push_back(path + ": expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) errors_.push_back(path + "." + key + ": missing field");
      return nullptr;
    }
    return &*it;
  }

  template <typename T>
  std::optional<T> get(const json& obj, const std::string& key, const std::string& path,
                       bool required = true) {
    const json* v = member(obj, key, path, required);
    if (v == nullptr) return std::nullopt;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v->is_number()) throw std::invalid_argument("number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v->is_number_integer()) throw std::invalid_argument("integer");
      } else {
        if (!v->is_string()) throw std::invalid_argument("string");
      }
      return v->get<T>();
    } catch (const std::exception& e) {
      errors_.push_back(path + "." + key + ": expected " + e.what());
      return std::nullopt;
    }
  }

  std::optional<geometry::Vec2> point(const json& obj, const std::string& key,
                                      const std::string& path) {
    const json* v = member(obj, key, path);
    if (v == nullptr) return std::nullopt;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      errors_.push_back(path + "." + key + ": expected [x, y]");
      return std::nullopt;
    }
    return geometry::Vec2{(*v)[0].get<double>(), (*v)[1].get<double>()};
  }

 private:
  std::vector<std::string>& errors_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError({path + ": cannot open file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

world::AgentState AgentScript::state_at(double t) const {
  world::AgentState st;
  st.id = id;
  st.cls = cls;
  st.length = length;
  st.width = width;
  if (kind == Kind::kConstantVelocity) {
    const double tau = std::clamp(t, start_time, end_time) - start_time;
    st.position = position + velocity * tau;
    st.heading = std::atan2(velocity.y, velocity.x);
    const bool moving = t >= start_time && t < end_time;
    st.velocity = moving ? velocity : geometry::Vec2{};
    return st;
  }
  if (waypoints.empty()) return st;
  if (waypoints.size() == 1 || t <= waypoints.front().t) {
    st.position = waypoints.front().p;
  } else if (t >= waypoints.back().t) {
    st.position = waypoints.back().p;
  }
  double heading = 0.0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const auto& a = waypoints[i];
    const auto& b = waypoints[i + 1];
    const geometry::Vec2 d = b.p - a.p;
    if (d.norm() > 1e-9) heading = std::atan2(d.y, d.x);
    if (t >= a.t && t < b.t) {
      const double w = (t - a.t) / (b.t - a.t);
      st.position = a.p + d * w;
      st.velocity = d * (1.0 / (b.t - a.t));
      break;
    }
    if (t < a.t) break;
  }
  st.heading = heading;
  return st;
}

void apply_config(StackConfig& cfg, const json& overlay) {
  std::vector<std::string> errors;
  if (!overlay.is_object()) throw ScenarioError({"config: expected an object"});
  auto sections = config_sections(cfg);
  for (const auto& [name, body] : overlay.items()) {
    auto sec = sections.find(name);
    if (sec == sections.end()) {
      errors.push_back("config." + name + ": unknown section");
      continue;
    }
    if (!body.is_object()) {
      errors.push_back("config." + name + ": expected an object");
      continue;
    }
    for (const auto& [key, value] : body.items()) {
      const std::string path = "config." + name + "." + key;
      auto f = sec->second.find(key);
      if (f == sec->second.end()) {
        errors.push_back(path + ": unknown key");
        continue;
      }
      std::visit(
          [&](auto* target) {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, bool>) {
              if (!value.is_boolean()) {
                errors.push_back(path + ": expected a boolean");
                return;
              }
            } else if constexpr (std::is_same_v<T, int>) {
              if (!value.is_number_integer()) {
                errors.push_back(path + ": expected an integer");
                return;
              }
            } else if (!value.is_number()) {
              errors.push_back(path + ": expected a number");
              return;
            }
            *target = value.get<T>();
          },
          f->second);
    }
  }
  if (errors.empty()) check_config(cfg, errors);
  if (!errors.empty()) throw ScenarioError(errors);
}

Scenario load_scenario(std::string_view text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("parse error: ") + e.what()});
  }
  std::vector<std::string> errors;
  Reader rd(errors);
  Scenario sc;

  if (auto v = rd.get<int>(doc, "schema_version", "scenario")) {
    if (*v != kScenarioSchemaVersion) {
      errors.push_back("scenario.schema_version: unsupported version " + std::to_string(*v));
    }
  }
  sc.name = rd.get<std::string>(doc, "name", "scenario").value_or("");
  if (auto m = rd.get<std::string>(doc, "map", "scenario")) {
    const std::filesystem::path p(*m);
    sc.map_path = (p.is_absolute() ? p : std::filesystem::path(base_dir) / p).string();
    try {
      sc.map = roadmap::load_roadmap_file(sc.map_path);
    } catch (const roadmap::MapError& e) {
      for (const auto& d : e.diagnostics()) errors.push_back("scenario.map: " + d);
    }
  }
  if (const json* ego = rd.member(doc, "ego", "scenario")) {
    sc.ego.edge = rd.get<int>(*ego, "edge", "scenario.ego").value_or(-1);
    sc.ego.s = rd.get<double>(*ego, "s", "scenario.ego").value_or(0.0);
    sc.ego.v = rd.get<double>(*ego, "v", "scenario.ego", false).value_or(0.0);
    sc.ego.d = rd.get<double>(*ego, "d", "scenario.ego", false).value_or(0.0);
  }
  sc.goal = rd.get<std::string>(doc, "goal", "scenario").value_or("");
  if (const json* stops = rd.member(doc, "stops", "scenario", false)) {
    if (!stops->is_array()) {
      errors.push_back("scenario.stops: expected an array");
    } else {
      for (const auto& s : *stops) {
        if (s.is_string()) {
          sc.stops.push_back(s.get<std::string>());
        } else {
          errors.push_back("scenario.stops: expected station names");
        }
      }
    }
  }
  if (const json* agents = rd.member(doc, "agents", "scenario", false)) {
    for (std::size_t i = 0; agents->is_array() && i < agents->size(); ++i) {
      const json& aj = (*agents)[i];
      const std::string path = "scenario.agents[" + std::to_string(i) + "]";
      AgentScript a;
      a.id = rd.get<int>(aj, "id", path).value_or(0);
      if (auto cls = rd.get<std::string>(aj, "class", path)) {
        try {
          a.cls = world::agent_class_from_string(*cls);
        } catch (const std::exception& e) {
          errors.push_back(path + ".class: " + e.what());
        }
      }
      a.length = rd.get<double>(aj, "length", path, false).value_or(a.length);
      a.width = rd.get<double>(aj, "width", path, false).value_or(a.width);
      const json* motion = rd.member(aj, "motion", path);
      if (motion == nullptr) continue;
      const std::string mpath = path + ".motion";
      const auto type = rd.get<std::string>(*motion, "type", mpath).value_or("");
      if (type == "constant_velocity") {
        a.kind = AgentScript::Kind::kConstantVelocity;
        a.position = rd.point(*motion, "position", mpath).value_or(geometry::Vec2{});
        a.velocity = rd.point(*motion, "velocity", mpath).value_or(geometry::Vec2{});
        a.start_time = rd.get<double>(*motion, "start_time", mpath, false).value_or(0.0);
        a.end_time = rd.get<double>(*motion, "end_time", mpath, false).value_or(1e9);
      } else if (type == "waypoints") {
        a.kind = AgentScript::Kind::kWaypoints;
        const json* wps = rd.member(*motion, "waypoints", mpath);
        if (wps != nullptr && wps->is_array()) {
          for (const auto& w : *wps) {
            if (!w.is_array() || w.size() != 3 || !w[0].is_number() || !w[1].is_number() ||
                !w[2].is_number()) {
              errors.push_back(mpath + ".waypoints: expected [t, x, y]");
              break;
            }
            a.waypoints.push_back({w[0].get<double>(), {w[1].get<double>(), w[2].get<double>()}});
          }
          for (std::size_t k = 1; k < a.waypoints.size(); ++k) {
            if (!(a.waypoints[k].t > a.waypoints[k - 1].t)) {
              errors.push_back(mpath + ".waypoints: times must increase");
              break;
            }
          }
        }
        if (a.waypoints.empty()) errors.push_back(mpath + ".waypoints: empty");
      } else {
        errors.push_back(mpath + ".type: unknown motion type '" + type + "'");
      }
      for (double t : {a.start_time, 0.0}) {
        try {
          world::validate(a.state_at(t));
        } catch (const std::invalid_argument& e) {
          errors.push_back(path + ": " + e.what());
          break;
        }
      }
      sc.agents.push_back(a);
    }
  }
  if (const json* noise = rd.member(doc, "noise", "scenario", false)) {
    const std::string path = "scenario.noise";
    auto& n = sc.noise;
    n.position_sigma = rd.get<double>(*noise, "position_sigma", path, false).value_or(0.0);
    n.velocity_sigma = rd.get<double>(*noise, "velocity_sigma", path, false).value_or(0.0);
    n.dropout = rd.get<double>(*noise, "dropout", path, false).value_or(0.0);
    n.boundary_jitter = rd.get<double>(*noise, "boundary_jitter", path, false).value_or(0.0);
    if (n.position_sigma < 0.0 || n.velocity_sigma < 0.0 || n.boundary_jitter < 0.0 ||
        n.dropout < 0.0 || n.dropout > 1.0) {
      errors.push_back(path + ": sigmas must be >= 0 and dropout in [0, 1]");
    }
  }
  if (const json* loc = rd.member(doc, "localization", "scenario", false)) {
    for (std::size_t i = 0; loc->is_array() && i < loc->size(); ++i) {
      const json& b = (*loc)[i];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
        errors.push_back("scenario.localization: expected [t, error] pairs");
        break;
      }
      sc.localization.profile.push_back({b[0].get<double>(), b[1].get<double>()});
    }
    try {
      world::validate(sc.localization);
    } catch (const std::invalid_argument& e) {
      errors.push_back(std::string("scenario.localization: ") + e.what());
    }
  }
  if (const json* cfg = rd.member(doc, "config", "scenario", false)) {
    sc.config_overrides = *cfg;
    StackConfig probe;
    try {
      apply_config(probe, *cfg);
    } catch (const ScenarioError& e) {
      for (const auto& d : e.diagnostics()) errors.push_back("scenario." + d);
    }
  }
  if (const json* seed = rd.member(doc, "seed", "scenario", false)) {
    if (seed->is_number_unsigned()) {
      sc.seed = seed->get<std::uint64_t>();
    } else {
      errors.push_back("scenario.seed: expected a non-negative integer");
    }
  }
  sc.noise.seed = sc.seed;
  sc.duration = rd.get<double>(doc, "duration", "scenario").value_or(0.0);
  if (!(sc.duration > 0.0)) errors.push_back("scenario.duration: must be positive");
  if (const json* events = rd.member(doc, "events", "scenario", false)) {
    for (std::size_t i = 0; events->is_array() && i < events->size(); ++i) {
      const std::string path = "scenario.events[" + std::to_string(i) + "]";
      ScenarioEvent ev;
      ev.t = rd.get<double>((*events)[i], "t", path).value_or(0.0);
      ev.type = rd.get<std::string>((*events)[i], "type", path).value_or("");
      if (ev.type != "dropoff_button") errors.push_back(path + ".type: unknown event");
      sc.events.push_back(ev);
    }
  }

  if (!sc.map.edges.empty()) {
    if (sc.ego.edge < 0 || sc.ego.edge >= static_cast<int>(sc.map.edges.size())) {
      errors.push_back("scenario.ego.edge: no such edge");
    } else {
      const auto& e = sc.map.edges[static_cast<std::size_t>(sc.ego.edge)];
      if (sc.ego.s < 0.0 || sc.ego.s > e.length) errors.push_back("scenario.ego.s: off edge");
    }
    if (sc.ego.v < 0.0) errors.push_back("scenario.ego.v: must be >= 0");
    for (const auto& name : sc.stops) {
      if (!sc.map.stations.contains(name)) {
        errors.push_back("scenario.stops: unknown station '" + name + "'");
      }
    }
    if (!sc.map.stations.contains(sc.goal)) {
      errors.push_back("scenario.goal: unknown station '" + sc.goal + "'");
    }
  }
  if (!errors.empty()) throw ScenarioError(errors);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  const std::string text = read_file(path);
  return load_scenario(text, std::filesystem::path(path).parent_path().string());
}

}  // namespace shuttle::sim
