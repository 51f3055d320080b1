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

#include "shuttle/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace shuttle::sim {

namespace {

constexpr double kMsToKmh = 3.6;

nlohmann::ordered_json or_null(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string fmt(double v, int prec = 2) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string fmt(const std::optional<double>& v, int prec = 2) {
  return v ? fmt(*v, prec) : std::string("-");
}

}  // namespace

MetricsReport compute_metrics(const SimLog& log) {
  MetricsReport m;
  const auto& ticks = log.ticks;
  const double dt = log.control_dt;
  double distance = 0.0;
  double driving_speed_sum = 0.0;
  int fast = 0;
  for (std::size_t k = 0; k < ticks.size(); ++k) {
    const auto& r = ticks[k];
    if (k > 0) distance += std::hypot(r.x - ticks[k - 1].x, r.y - ticks[k - 1].y);
    m.max_speed_kmh = std::max(m.max_speed_kmh, r.v * kMsToKmh);
    if (r.v > kDrivingSpeed) {
      ++m.driving_ticks;
      driving_speed_sum += r.v;
      if (r.v * kMsToKmh >= kFastSpeedKmh) ++fast;
    }
    if (r.pedestrian_clearance) {
      m.min_pedestrian_clearance =
          m.min_pedestrian_clearance
              ? std::min(*m.min_pedestrian_clearance, *r.pedestrian_clearance)
              : *r.pedestrian_clearance;
    }
  }
  m.distance_km = distance / 1000.0;
  if (m.driving_ticks > 0) {
    m.avg_speed_kmh = driving_speed_sum / m.driving_ticks * kMsToKmh;
    m.pct_time_fast = 100.0 * fast / m.driving_ticks;
  }

  std::vector<double> accel;
  for (std::size_t k = 0; k + 1 < ticks.size(); ++k) {
    accel.push_back((ticks[k + 1].v - ticks[k].v) / dt);
  }
  bool in_brake = false;
  for (std::size_t k = 0; k < accel.size(); ++k) {
    const double a = accel[k];
    m.min_accel = std::min(m.min_accel, a);
    m.max_accel = std::max(m.max_accel, a);
    if (!ticks[k].emergency && !ticks[k + 1].emergency) {
      m.comfort_max_abs_accel = std::max(m.comfort_max_abs_accel, std::abs(a));
    }
    const bool braking = a < kBrakingThreshold;
    if (braking && !in_brake) ++m.bt_count;
    in_brake = braking;
  }
  for (std::size_t k = 0; k + 1 < accel.size(); ++k) {
    const double j = (accel[k + 1] - accel[k]) / dt;
    m.min_jerk = std::min(m.min_jerk, j);
    m.max_jerk = std::max(m.max_jerk, j);
    if (!ticks[k].emergency && !ticks[k + 1].emergency && !ticks[k + 2].emergency) {
      m.comfort_max_abs_jerk = std::max(m.comfort_max_abs_jerk, std::abs(j));
    }
  }
  if (m.bt_count > 0) m.km_per_bt = m.distance_km / m.bt_count;

  for (const auto& e : log.events) {
    if (e.type == kSolverFailureEvent || e.type == kAllBlockedEvent) ++m.takeover_events;
    if (e.type == kCollisionEvent) ++m.collisions;
  }
  if (m.takeover_events > 0) m.km_per_takeover = m.distance_km / m.takeover_events;
  return m;
}

nlohmann::ordered_json to_json(const MetricsReport& m) {
  nlohmann::ordered_json j;
  j["distance_km"] = m.distance_km;
  j["max_speed_kmh"] = m.max_speed_kmh;
  j["avg_speed_kmh"] = m.avg_speed_kmh;
  j["pct_time_fast"] = m.pct_time_fast;
  j["min_accel"] = m.min_accel;
  j["max_accel"] = m.max_accel;
  j["min_jerk"] = m.min_jerk;
  j["max_jerk"] = m.max_jerk;
  j["bt_count"] = m.bt_count;
  j["km_per_bt"] = or_null(m.km_per_bt);
  j["takeover_events"] = m.takeover_events;
  j["km_per_takeover"] = or_null(m.km_per_takeover);
  j["min_pedestrian_clearance"] = or_null(m.min_pedestrian_clearance);
  j["comfort_max_abs_accel"] = m.comfort_max_abs_accel;
  j["comfort_max_abs_jerk"] = m.comfort_max_abs_jerk;
  j["collisions"] = m.collisions;
  j["driving_ticks"] = m.driving_ticks;
  return j;
}

std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  char line[512];
  std::string out;
  std::snprintf(line, sizeof(line), "%-24s %9s %9s %8s %8s %8s %8s %8s %5s %9s %5s %9s\n",
                "scenario", "max km/h", "avg km/h", "%>=9", "acc min", "acc max",
                "jerk min", "jerk max", "BT", "km/BT", "TO", "km/TO");
  out += line;
  for (const auto& [name, m] : rows) {
    std::snprintf(line, sizeof(line), "%-24s %9s %9s %8s %8s %8s %8s %8s %5d %9s %5d %9s\n",
                  name.c_str(), fmt(m.max_speed_kmh).c_str(), fmt(m.avg_speed_kmh).c_str(),
                  fmt(m.pct_time_fast, 1).c_str(), fmt(m.min_accel).c_str(),
                  fmt(m.max_accel).c_str(), fmt(m.min_jerk).c_str(), fmt(m.max_jerk).c_str(),
                  m.bt_count, fmt(m.km_per_bt, 4).c_str(), m.takeover_events,
                  fmt(m.km_per_takeover, 4).c_str());
    out += line;
  }
  return out;
}

}  // namespace shuttle::sim
