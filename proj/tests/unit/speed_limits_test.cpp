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

#include <cmath>

#include "shuttle/motion/speed_limits.hpp"

namespace shuttle::motion {
namespace {

TEST(SpeedLimits, CurvatureLimit) {
  EXPECT_FALSE(curvature_speed_limit(0.0, 1.0).has_value());
  EXPECT_NEAR(*curvature_speed_limit(1.0 / 6.0, 1.0), std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(*curvature_speed_limit(-0.25, 1.0), 2.0, 1e-12);
}

TEST(SpeedLimits, ClearanceTiersAreContinuousAndMonotone) {
  const SpeedLimitConfig cfg;
  EXPECT_DOUBLE_EQ(clearance_speed_limit(0.0, cfg), cfg.v_min);
  EXPECT_DOUBLE_EQ(clearance_speed_limit(cfg.delta_mdn, cfg), cfg.v_mdn);
  EXPECT_DOUBLE_EQ(clearance_speed_limit(cfg.delta_max, cfg), cfg.v_max);
  EXPECT_DOUBLE_EQ(clearance_speed_limit(50.0, cfg), cfg.v_max);
  double prev = clearance_speed_limit(0.0, cfg);
  for (double c = 0.0; c <= 3.0; c += 0.001) {
    const double v = clearance_speed_limit(c, cfg);
    EXPECT_GE(v, prev - 1e-12);
    EXPECT_LE(v - prev, 0.01);
    prev = v;
  }
}

TEST(SpeedLimits, ValidationRejectsDisorderedTiers) {
  SpeedLimitConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.delta_mdn = 0.2;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.v_min = 2.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.a_lat = 0.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace shuttle::motion
