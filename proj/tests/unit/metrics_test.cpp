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

#include <gtest/gtest.h>

#include "shuttle/sim/metrics.hpp"

namespace shuttle::sim {
namespace {

SimLog ramp_log(const std::vector<double>& speeds) {
  SimLog log;
  log.control_dt = 0.1;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    TickRecord r;
    r.t = 0.1 * i;
    r.x = i == 0 ? 0.0 : 0.0;
    r.v = speeds[i];
    log.ticks.push_back(r);
  }
  double x = 0.0;
  for (std::size_t i = 1; i < speeds.size(); ++i) {
    x += 0.1 * speeds[i];
    log.ticks[i].x = x;
  }
  return log;
}

TEST(Metrics, AccelerationJerkAndBrakingEvents) {
  // +1, +1, -2, -2, 0 m/s^2.
  const auto m = compute_metrics(ramp_log({1.0, 1.1, 1.2, 1.0, 0.8, 0.8}));
  EXPECT_NEAR(m.max_accel, 1.0, 1e-9);
  EXPECT_NEAR(m.min_accel, -2.0, 1e-9);
  EXPECT_NEAR(m.min_jerk, -30.0, 1e-6);
  EXPECT_NEAR(m.max_jerk, 20.0, 1e-6);
  EXPECT_EQ(m.bt_count, 1);
  EXPECT_NEAR(m.comfort_max_abs_accel, 2.0, 1e-9);
  EXPECT_NEAR(m.distance_km, (1.1 + 1.2 + 1.0 + 0.8 + 0.8) * 1e-4, 1e-12);
  EXPECT_FALSE(m.min_pedestrian_clearance.has_value());
}

TEST(Metrics, EmergencyTicksLeaveComfortExtrema) {
  auto log = ramp_log({2.0, 2.0, 1.0, 1.0});
  log.ticks[1].emergency = true;
  const auto m = compute_metrics(log);
  EXPECT_NEAR(m.min_accel, -10.0, 1e-9);
  EXPECT_NEAR(m.comfort_max_abs_accel, 0.0, 1e-9);
}

TEST(Metrics, SpeedShareAndEventCounts) {
  auto log = ramp_log({3.0, 3.0, 1.0, 0.0});
  log.events = {{0.1, "collision", ""}, {0.2, "all_blocked", ""}};
  const auto m = compute_metrics(log);
  EXPECT_EQ(m.driving_ticks, 3);
  EXPECT_NEAR(m.pct_time_fast, 100.0 * 2 / 3, 1e-9);
  EXPECT_NEAR(m.max_speed_kmh, 10.8, 1e-9);
  EXPECT_EQ(m.collisions, 1);
  EXPECT_EQ(m.takeover_events, 1);
  EXPECT_TRUE(m.km_per_takeover.has_value());
  const auto j = to_json(m);
  EXPECT_TRUE(j.contains("comfort_max_abs_jerk"));
  EXPECT_NE(format_table({{"x", m}}).find("x"), std::string::npos);
}

}  // namespace
}  // namespace shuttle::sim
