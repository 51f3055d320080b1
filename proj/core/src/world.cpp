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

#include "shuttle/world.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shuttle::world {

using geometry::Vec2;

std::string_view to_string(AgentClass cls) {
  switch (cls) {
    case AgentClass::kPedestrian:
      return "pedestrian";
    case AgentClass::kCyclist:
      return "cyclist";
    case AgentClass::kVehicle:
      return "vehicle";
  }
  return "unknown";
}

AgentClass agent_class_from_string(std::string_view name) {
  if (name == "pedestrian") return AgentClass::kPedestrian;
  if (name == "cyclist") return AgentClass::kCyclist;
  if (name == "vehicle") return AgentClass::kVehicle;
  throw std::invalid_argument("unknown agent class '" + std::string(name) + "'");
}

void validate(const AgentState& agent) {
  if (!(agent.length > 0.0) || !(agent.width > 0.0)) {
    throw std::invalid_argument("agent " + std::to_string(agent.id) +
                                ": footprint dimensions must be positive");
  }
  if (agent.speed() > kMaxAgentSpeed) {
    throw std::invalid_argument("agent " + std::to_string(agent.id) +
                                ": speed exceeds 15 m/s");
  }
}

PredictedTrajectory predict_cv(const AgentState& agent, double horizon, double dt) {
  if (!(dt > 0.0) || horizon < dt) {
    throw std::invalid_argument("prediction needs dt > 0 and horizon >= dt");
  }
  PredictedTrajectory pred;
  pred.agent_id = agent.id;
  pred.dt = dt;
  pred.horizon = horizon;
  pred.heading = agent.heading;
  pred.length = agent.length;
  pred.width = agent.width;
  const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
  pred.positions.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    pred.positions.push_back(agent.position + agent.velocity * t);
  }
  return pred;
}

double Rng::uniform() {
  // 53 random mantissa bits in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<AgentState> sense(const std::vector<AgentState>& truth,
                              const DetectionNoise& noise, Rng& rng) {
  if (noise.position_sigma < 0.0 || noise.velocity_sigma < 0.0) {
    throw std::invalid_argument("noise sigma must be non-negative");
  }
  std::vector<AgentState> out;
  out.reserve(truth.size());
  for (const auto& agent : truth) {
    if (noise.dropout > 0.0 && rng.uniform() < noise.dropout) continue;
    AgentState seen = agent;
    if (noise.position_sigma > 0.0) {
      seen.position += Vec2{rng.gaussian(), rng.gaussian()} * noise.position_sigma;
    }
    if (noise.velocity_sigma > 0.0) {
      seen.velocity += Vec2{rng.gaussian(), rng.gaussian()} * noise.velocity_sigma;
    }
    out.push_back(seen);
  }
  return out;
}

std::vector<geometry::Polygon> jitter_boundaries(
    const std::vector<geometry::Polygon>& curbs, double amplitude, double t) {
  if (amplitude <= 0.0) return curbs;
  constexpr double kFrequencyHz = 1.3;
  std::vector<geometry::Polygon> out = curbs;
  for (std::size_t p = 0; p < out.size(); ++p) {
    auto& poly = out[p];
    Vec2 centroid;
    for (const auto& v : poly) centroid += v;
    centroid = centroid * (1.0 / static_cast<double>(poly.size()));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 radial = poly[i] - centroid;
      const double len = radial.norm();
      if (len <= 0.0) continue;
      const double phase = 0.7 * static_cast<double>(i) + 1.9 * static_cast<double>(p);
      const double offset =
          amplitude * std::sin(2.0 * std::numbers::pi * kFrequencyHz * t + phase);
      poly[i] += radial * (offset / len);
    }
  }
  return out;
}

void validate(const LocalizationHealth& health) {
  for (std::size_t i = 0; i < health.profile.size(); ++i) {
    if (health.profile[i].error < 0.0) {
      throw std::invalid_argument("localization error must be non-negative");
    }
    if (i > 0 && !(health.profile[i].t > health.profile[i - 1].t)) {
      throw std::invalid_argument("localization profile times must increase strictly");
    }
  }
}

double localization_error_at(const LocalizationHealth& health, double t) {
  const auto& prof = health.profile;
  if (prof.empty()) return 0.0;
  if (t <= prof.front().t) return prof.front().error;
  if (t >= prof.back().t) return prof.back().error;
  for (std::size_t i = 1; i < prof.size(); ++i) {
    if (t <= prof[i].t) {
      const double w = (t - prof[i - 1].t) / (prof[i].t - prof[i - 1].t);
      return prof[i - 1].error + w * (prof[i].error - prof[i - 1].error);
    }
  }
  return prof.back().error;
}

}  // namespace shuttle::world
