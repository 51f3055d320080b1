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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "shuttle/behavior.hpp"
#include "shuttle/control.hpp"
#include "shuttle/motion/trajectory_planner.hpp"
#include "shuttle/roadmap.hpp"
#include "shuttle/world.hpp"

namespace shuttle::sim {

inline constexpr int kScenarioSchemaVersion = 1;

// Every tunable of the driving stack, overridable from scenario and config
// files.
struct StackConfig {
  behavior::BehaviorConfig behavior;
  behavior::GovernorParams governor;
  motion::PlannerConfig planner;
  control::MpcParams mpc;
  control::VehicleParams vehicle;
  frenet::EgoDims ego;
  double control_dt{0.1};
  int plan_every{2};  // control ticks per planning cycle
  int substeps{5};
  double all_blocked_timeout{20.0};
  double goal_tolerance{1.0};
  double stopped_speed{0.1};
};

// Scripted agent motion. Constant velocity moves from `position` between
// start and end times and holds still outside them; waypoint schedules are
// followed piecewise linearly and held at both ends.
struct AgentScript {
  int id{0};
  world::AgentClass cls{world::AgentClass::kPedestrian};
  double length{0.5};
  double width{0.5};
  enum class Kind { kConstantVelocity, kWaypoints } kind{Kind::kConstantVelocity};
  geometry::Vec2 position;
  geometry::Vec2 velocity;
  double start_time{0.0};
  double end_time{1e9};
  struct Waypoint {
    double t{0.0};
    geometry::Vec2 p;
  };
  std::vector<Waypoint> waypoints;

  world::AgentState state_at(double t) const;
};

struct ScenarioEvent {
  double t{0.0};
  std::string type;  // "dropoff_button"
};

struct EgoStart {
  int edge{0};
  double s{0.0};
  double v{0.0};
  double d{0.0};
};

struct Scenario {
  std::string name;
  std::string map_path;  // resolved against the scenario file's directory
  roadmap::RoadMap map;
  EgoStart ego;
  std::vector<std::string> stops;  // visited in order, each followed by a dwell
  std::string goal;
  std::vector<AgentScript> agents;
  world::DetectionNoise noise;
  world::LocalizationHealth localization;
  nlohmann::json config_overrides = nlohmann::json::object();
  std::uint64_t seed{0};
  double duration{120.0};
  std::vector<ScenarioEvent> events;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// Parses and validates a scenario; `base_dir` resolves the map reference.
Scenario load_scenario(std::string_view text, const std::string& base_dir);
Scenario load_scenario_file(const std::string& path);

// Applies a {"behavior": {...}, "planner": {...}, ...} overlay. Unknown
// sections or keys are rejected.
void apply_config(StackConfig& cfg, const nlohmann::json& overlay);

}  // namespace shuttle::sim
