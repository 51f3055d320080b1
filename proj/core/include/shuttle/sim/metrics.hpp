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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlohmann/json.hpp"
#include "shuttle/sim/log.hpp"

namespace shuttle::sim {

inline constexpr double kDrivingSpeed = 0.1;        // m/s
inline constexpr double kFastSpeedKmh = 9.0;
inline constexpr double kBrakingThreshold = -1.0;   // m/s^2

struct MetricsReport {
  double distance_km{0.0};
  double max_speed_kmh{0.0};
  double avg_speed_kmh{0.0};
  double pct_time_fast{0.0};  // share of driving time at >= 9 km/h, percent
  double min_accel{0.0};
  double max_accel{0.0};
  double min_jerk{0.0};
  double max_jerk{0.0};
  int bt_count{0};
  std::optional<double> km_per_bt;
  int takeover_events{0};
  std::optional<double> km_per_takeover;
  std::optional<double> min_pedestrian_clearance;
  // Extrema over samples not touched by a flagged emergency.
  double comfort_max_abs_accel{0.0};
  double comfort_max_abs_jerk{0.0};
  int collisions{0};
  int driving_ticks{0};
};

// Accelerations and jerks are finite differences of logged speed at the
// control period.
MetricsReport compute_metrics(const SimLog& log);

nlohmann::ordered_json to_json(const MetricsReport& m);

// Fixed-width table, one row per named report.
std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& rows);

}  // namespace shuttle::sim
