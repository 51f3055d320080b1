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

#include "scenes.hpp"
#include "shuttle/motion/path.hpp"

namespace shuttle::motion {
namespace {

frenet::FrenetFrame straight_frame() {
  frenet::FrenetFrame f;
  const std::vector<geometry::Vec2> pts{{0, 0}, {40, 0}};
  f.curve = geometry::Curve::from_polyline(pts, 0.5);
  f.s_max = f.curve.length();
  f.tags.assign(f.size(), roadmap::ScenarioTag::kCommon);
  f.speed_limits.assign(f.size(), roadmap::kMaxRouteSpeed);
  return f;
}

TEST(Path, ConvergesToTargetOffsetFromDisplacedStart) {
  const auto frame = straight_frame();
  PathRequest req;
  req.frame = &frame;
  req.target_offset = 0.5;
  req.start_offset = -0.5;
  const auto path = generate_path(req);
  EXPECT_TRUE(path.converged);
  EXPECT_NEAR(path.support_offsets.front(), -0.5, 1e-2);
  EXPECT_NEAR(path.support_offsets.back(), 0.5, 0.25);
  for (const auto& s : path.curve.samples()) EXPECT_LE(std::abs(s.kappa), kMaxPathCurvature + 1e-2);
}

TEST(Path, AcceptedIteratesNeverIncreaseObjective) {
  world::Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const auto frame = scenes::random_frame(rng, 40.0, 0.1);
    const auto ctx = scenes::random_behavior_scene(rng, frame, 4, 0);
    PathRequest req;
    req.frame = &frame;
    req.target_offset = (rng.uniform() - 0.5) * 1.5;
    req.start_offset = (rng.uniform() - 0.5) * 1.5;
    req.obstacles = ctx.static_obstacles;
    req.inflation = 0.2;
    const auto path = generate_path(req);
    ASSERT_FALSE(path.objective_history.empty());
    for (std::size_t k = 1; k < path.objective_history.size(); ++k) {
      EXPECT_LE(path.objective_history[k], path.objective_history[k - 1] + 1e-9) << i;
    }
    EXPECT_NEAR(path.objective_history.back(),
                path_objective(req, PathParams{}, path.support_offsets), 1e-6);
  }
}

TEST(Path, BendsAwayFromObstacle) {
  const auto frame = straight_frame();
  PathRequest req;
  req.frame = &frame;
  req.obstacles.push_back({{15, 0.6}, {20, 0.6}, {20, 3}, {15, 3}});
  req.inflation = 0.2;
  const auto path = generate_path(req);
  double lowest = 0.0;
  for (double d : path.support_offsets) lowest = std::min(lowest, d);
  EXPECT_LT(lowest, -0.05);
}

TEST(Path, FrameAndPathPositionsAreInverse) {
  const auto frame = straight_frame();
  PathRequest req;
  req.frame = &frame;
  req.start_offset = 0.8;
  const auto path = generate_path(req);
  for (double fs : {0.0, 3.3, 17.0, 35.5}) EXPECT_NEAR(path.frame_s_at(path.path_s_at(fs)), fs, 1e-6);
}

}  // namespace
}  // namespace shuttle::motion
