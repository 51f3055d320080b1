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
#include "shuttle/sim/simulator.hpp"

namespace shuttle::sim {
namespace {

const std::string kScenarios = std::string(SHUTTLE_FIXTURE_DIR) + "/scenarios";

TEST(Simulator, StraightawayReachesGoalSmoothly) {
  const auto sc = load_scenario_file(kScenarios + "/straightaway.json");
  const auto log = run_scenario(sc);
  EXPECT_EQ(log.status, TerminalStatus::kGoalReached) << log.reason;
  const auto m = compute_metrics(log);
  EXPECT_EQ(m.collisions, 0);
  EXPECT_LE(m.comfort_max_abs_accel, 2.0);
  EXPECT_LE(m.max_speed_kmh, 4.17 * 3.6 + 1e-6);
  EXPECT_GT(m.distance_km, 0.1);
}

TEST(Simulator, SameSeedSameDigest) {
  const auto sc = load_scenario_file(kScenarios + "/jaywalker.json");
  EXPECT_EQ(run_scenario(sc).digest(), run_scenario(sc).digest());
}

TEST(Simulator, SeedOverrideAndConfigOverlayAreHonoured) {
  const auto sc = load_scenario_file(kScenarios + "/straightaway.json");
  RunOptions opt;
  opt.seed = 77;
  opt.config = {{"limits", {{"v_max", 3.0}}}};
  EXPECT_DOUBLE_EQ(effective_config(sc, opt).planner.limits.v_max, 3.0);
  const auto log = run_scenario(sc, opt);
  EXPECT_EQ(log.seed, 77u);
}

TEST(Simulator, PlanCallbackSeesEveryAcceptedPlan) {
  const auto sc = load_scenario_file(kScenarios + "/turn.json");
  int plans = 0;
  RunOptions opt;
  opt.on_plan = [&](const PlanRecord& r) {
    ++plans;
    ASSERT_NE(r.trajectory, nullptr);
    ASSERT_NE(r.reference, nullptr);
  };
  const auto log = run_scenario(sc, opt);
  EXPECT_EQ(log.status, TerminalStatus::kGoalReached);
  EXPECT_GT(plans, 50);
}

}  // namespace
}  // namespace shuttle::sim
