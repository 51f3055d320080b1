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
#include <random>
#include <string_view>
#include <vector>

#include "shuttle/geometry.hpp"

namespace shuttle::world {

enum class AgentClass { kPedestrian, kCyclist, kVehicle };

std::string_view to_string(AgentClass cls);
AgentClass agent_class_from_string(std::string_view name);

inline constexpr double kMaxAgentSpeed = 15.0;

struct AgentState {
  int id{0};
  AgentClass cls{AgentClass::kPedestrian};
  geometry::Vec2 position;
  double heading{0.0};
  double length{0.5};
  double width{0.5};
  geometry::Vec2 velocity;

  geometry::OrientedBox footprint() const { return {position, heading, length, width}; }
  double speed() const { return velocity.norm(); }
  bool operator==(const AgentState&) const = default;
};

// Throws std::invalid_argument when footprint or speed bounds are violated.
void validate(const AgentState& agent);

struct PredictedTrajectory {
  int agent_id{0};
  double dt{0.2};
  double horizon{4.0};
  double heading{0.0};
  double length{0.0};
  double width{0.0};
  std::vector<geometry::Vec2> positions;

  geometry::OrientedBox footprint_at(std::size_t step) const {
    return {positions[step], heading, length, width};
  }
  double time_at(std::size_t step) const { return static_cast<double>(step) * dt; }
};

inline constexpr double kDefaultPredictionHorizon = 4.0;
inline constexpr double kDefaultPredictionDt = 0.2;

PredictedTrajectory predict_cv(const AgentState& agent,
                               double horizon = kDefaultPredictionHorizon,
                               double dt = kDefaultPredictionDt);

struct DetectionNoise {
  double position_sigma{0.0};
  double velocity_sigma{0.0};
  double dropout{0.0};
  double boundary_jitter{0.0};
  std::uint64_t seed{0};
};

// Seeded source of the simulator's randomness. Gaussian draws use Box-Muller
// over the raw mt19937_64 stream so sequences are identical on every
// platform, unlike std::normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_{false};
  double spare_{0.0};
};

std::vector<AgentState> sense(const std::vector<AgentState>& truth,
                              const DetectionNoise& noise, Rng& rng);

// Periodic radial jitter of curb vertices about each polygon centroid, used
// to emulate a flickering drivable-area boundary.
std::vector<geometry::Polygon> jitter_boundaries(
    const std::vector<geometry::Polygon>& curbs, double amplitude, double t);

struct LocalizationBreakpoint {
  double t{0.0};
  double error{0.0};
};

struct LocalizationHealth {
  std::vector<LocalizationBreakpoint> profile;
};

// Throws std::invalid_argument unless times strictly increase and errors >= 0.
void validate(const LocalizationHealth& health);

double localization_error_at(const LocalizationHealth& health, double t);

}  // namespace shuttle::world
