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

#include "shuttle/world.hpp"

namespace shuttle::world {
namespace {

TEST(Prediction, ConstantVelocityStepsAndHorizon) {
  AgentState a;
  a.id = 4;
  a.position = {1.0, 2.0};
  a.velocity = {0.5, -1.0};
  const auto p = predict_cv(a, 4.0, 0.2);
  ASSERT_EQ(p.positions.size(), 21u);
  EXPECT_EQ(p.agent_id, 4);
  EXPECT_NEAR(p.positions.back().x, 3.0, 1e-12);
  EXPECT_NEAR(p.positions.back().y, -2.0, 1e-12);
  EXPECT_NEAR(p.time_at(10), 2.0, 1e-12);
  EXPECT_THROW(predict_cv(a, 0.1, 0.2), std::invalid_argument);
}

TEST(Agent, ValidationRejectsBadFootprintAndSpeed) {
  AgentState a;
  EXPECT_NO_THROW(validate(a));
  a.width = 0.0;
  EXPECT_THROW(validate(a), std::invalid_argument);
  a.width = 0.5;
  a.velocity = {20.0, 0.0};
  EXPECT_THROW(validate(a), std::invalid_argument);
  EXPECT_EQ(agent_class_from_string("cyclist"), AgentClass::kCyclist);
  EXPECT_EQ(to_string(AgentClass::kVehicle), "vehicle");
  EXPECT_THROW(agent_class_from_string("horse"), std::invalid_argument);
}

TEST(Rng, SeededStreamsRepeat) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs = differs || x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, GaussianMoments) {
  Rng rng(3);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(Sensing, NoiselessSensingIsIdentity) {
  Rng rng(1);
  AgentState a;
  a.position = {3.0, 4.0};
  EXPECT_EQ(sense({a}, DetectionNoise{}, rng), std::vector<AgentState>{a});
  DetectionNoise all_drop;
  all_drop.dropout = 1.0;
  EXPECT_TRUE(sense({a}, all_drop, rng).empty());
  DetectionNoise bad;
  bad.position_sigma = -1.0;
  EXPECT_THROW(sense({a}, bad, rng), std::invalid_argument);
}

TEST(Sensing, BoundaryJitterIsBoundedByAmplitude) {
  const geometry::Polygon curb{{0, 0}, {10, 0}, {10, 1}, {0, 1}};
  for (double t : {0.0, 0.3, 1.7}) {
    const auto out = jitter_boundaries({curb}, 0.3, t);
    for (std::size_t i = 0; i < curb.size(); ++i) {
      EXPECT_LE(geometry::distance(out[0][i], curb[i]), 0.3 + 1e-12);
    }
  }
  EXPECT_EQ(jitter_boundaries({curb}, 0.0, 1.0)[0], curb);
}

TEST(Localization, PiecewiseLinearProfile) {
  LocalizationHealth h{{{0, 0.1}, {10, 0.5}, {20, 0.5}}};
  EXPECT_NO_THROW(validate(h));
  EXPECT_DOUBLE_EQ(localization_error_at(h, -1.0), 0.1);
  EXPECT_NEAR(localization_error_at(h, 5.0), 0.3, 1e-12);
  EXPECT_DOUBLE_EQ(localization_error_at(h, 30.0), 0.5);
  EXPECT_DOUBLE_EQ(localization_error_at({}, 3.0), 0.0);
  LocalizationHealth bad{{{0, 0.1}, {0, 0.2}}};
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

}  // namespace
}  // namespace shuttle::world
