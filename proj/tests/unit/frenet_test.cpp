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

#include <fstream>
#include <sstream>

#include "shuttle/frenet.hpp"

namespace shuttle::frenet {
namespace {

roadmap::RoadMap turn_map() {
  std::ifstream in(std::string(SHUTTLE_FIXTURE_DIR) + "/maps/turn.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return roadmap::load_roadmap(ss.str());
}

TEST(Frame, WindowFollowsRouteAndCarriesAttributes) {
  const auto map = turn_map();
  const auto route = roadmap::plan_global_route(map, {0, 5.0}, "North");
  ASSERT_TRUE(route.ok());
  const auto frame = build_frame(*route, 30.0, 40.0);
  ASSERT_TRUE(frame.ok()) << frame.status();
  EXPECT_NEAR(frame->origin_s, 30.0, 1e-9);
  EXPECT_NEAR(frame->s_max, 40.0, 0.5);
  EXPECT_EQ(frame->tags.size(), frame->size());
  EXPECT_EQ(frame->speed_limits.size(), frame->size());
  const auto p0 = frame->point_at(0.0);
  const auto r0 = route->position_at(30.0);
  EXPECT_NEAR(geometry::distance(p0, r0), 0.0, 1e-6);
  // The arc of radius 6 shows up in the frame curvature.
  double kmax = 0.0;
  for (const auto& s : frame->curve.samples()) kmax = std::max(kmax, std::abs(s.kappa));
  EXPECT_NEAR(kmax, 1.0 / 6.0, 0.02);
}

TEST(Frame, ProjectRejectsFarPoints) {
  const auto map = turn_map();
  const auto route = roadmap::plan_global_route(map, {0, 5.0}, "North");
  const auto frame = build_frame(*route, 0.0, 30.0);
  ASSERT_TRUE(frame.ok());
  const auto near = project(*frame, {10.0, 1.0});
  ASSERT_TRUE(near.ok());
  EXPECT_NEAR(near->d, 1.0, 1e-6);
  EXPECT_FALSE(project(*frame, {10.0, 50.0}).ok());
}

TEST(Clearance, ProfileAgainstSingleBlock) {
  FrenetFrame frame;
  const std::vector<Vec2> pts{{0, 0}, {40, 0}};
  frame.curve = geometry::Curve::from_polyline(pts, 0.5);
  frame.s_max = 40.0;
  frame.tags.assign(frame.size(), roadmap::ScenarioTag::kCommon);
  frame.speed_limits.assign(frame.size(), 4.0);
  const EgoDims ego;
  // A box across the lane ahead: rear face at x = 20.
  const Polygon block{{20, -3}, {22, -3}, {22, 3}, {20, 3}};
  const auto prof = clearance_profile(frame, 0.0, {block}, 0.2, ego);
  // Ego front reaches s + center_offset + length / 2.
  const double front = ego.center_offset + 0.5 * ego.length;
  EXPECT_NEAR(prof.s_m, std::ceil((20.0 - 0.2 - front) / 0.5) * 0.5, 1e-9);
  EXPECT_DOUBLE_EQ(prof.clearances.front(), 5.0);
  EXPECT_GT(prof.c_min, 0.0);
  EXPECT_LE(prof.c_min, prof.c_avg);
  // Nothing in the way: full window, capped clearance.
  const auto open = clearance_profile(frame, 0.0, {}, 0.2, ego);
  EXPECT_DOUBLE_EQ(open.s_m, 40.0);
  EXPECT_DOUBLE_EQ(open.c_min, 5.0);
}

TEST(Clearance, EgoBoxSitsAheadOfRearAxle) {
  const std::vector<Vec2> pts{{0, 0}, {40, 0}};
  const auto curve = geometry::Curve::from_polyline(pts, 0.5);
  const auto box = ego_box_at(curve, 10.0, 1.0, EgoDims{});
  EXPECT_NEAR(box.center.x, 11.25, 1e-9);
  EXPECT_NEAR(box.center.y, 1.0, 1e-9);
}

}  // namespace
}  // namespace shuttle::frenet
