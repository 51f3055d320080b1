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

#include "route_oracle.hpp"
#include "scenes.hpp"
#include "shuttle/roadmap.hpp"

namespace shuttle::roadmap {
namespace {

std::string fixture(const std::string& rel) {
  std::ifstream in(std::string(SHUTTLE_FIXTURE_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RoadMap, FixtureMapsLoadAndHoldInvariants) {
  for (const char* name : {"straight", "turn", "parking", "intersection", "narrow"}) {
    const auto map = load_roadmap(fixture(std::string("maps/") + name + ".json"));
    EXPECT_TRUE(check_invariants(map).empty()) << name;
    EXPECT_FALSE(map.stations.empty()) << name;
  }
}

TEST(RoadMap, SerializeRoundTrips) {
  const auto map = load_roadmap(fixture("maps/intersection.json"));
  EXPECT_EQ(load_roadmap(serialize_roadmap(map)), map);
}

TEST(RoadMap, MalformedDocumentReportsEveryProblem) {
  try {
    load_roadmap(R"({"schema_version": 1, "nodes": [{"id": 0, "x": 0}],
                    "edges": [{"id": 0, "from": 0, "to": 7}]})");
    FAIL() << "expected MapError";
  } catch (const MapError& e) {
    EXPECT_GE(e.diagnostics().size(), 2u);
  }
  EXPECT_THROW(load_roadmap("not json"), MapError);
  EXPECT_THROW(load_roadmap(R"({"schema_version": 9, "nodes": [], "edges": []})"), MapError);
}

TEST(RoadMap, InvariantsCatchBadSpeedAndStations) {
  auto map = load_roadmap(fixture("maps/straight.json"));
  map.edges[0].speed_limit = 6.0;
  map.stations["Nowhere"] = {0, 1e4};
  EXPECT_GE(check_invariants(map).size(), 2u);
}

TEST(Route, StraightRouteCoversStartToStation) {
  const auto map = load_roadmap(fixture("maps/turn.json"));
  const auto route = plan_global_route(map, {0, 5.0}, "North");
  ASSERT_TRUE(route.ok()) << route.status();
  EXPECT_EQ(route->edge_ids, (std::vector<int>{0, 1, 2}));
  EXPECT_NEAR(route->start_s, 5.0, 1e-12);
  const double expected = map.edges[0].length + map.edges[1].length + 30.0;
  EXPECT_NEAR(route->goal_s, expected, 1e-6);
  const auto p = route->position_at(route->goal_s);
  EXPECT_NEAR(p.x, 46.0, 1e-3);
  EXPECT_NEAR(p.y, 36.0, 1e-3);
}

TEST(Route, UnknownStationAndBadStartAreErrors) {
  const auto map = load_roadmap(fixture("maps/turn.json"));
  EXPECT_FALSE(plan_global_route(map, {0, 5.0}, "Atlantis").ok());
  EXPECT_FALSE(plan_global_route(map, {9, 5.0}, "North").ok());
  EXPECT_FALSE(plan_global_route(map, {0, -1.0}, "North").ok());
}

TEST(Route, MatchesDijkstraOnRandomGraphs) {
  world::Rng rng(11);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const auto map = scenes::random_graph(rng, i % 2 == 0);
    const auto& e = map.edges[static_cast<std::size_t>(rng.uniform() * map.edges.size()) %
                              map.edges.size()];
    const EdgePosition start{e.id, rng.uniform() * e.length};
    const auto got = plan_global_route(map, start, "S0");
    const auto want = oracle::dijkstra_route(map, start, "S0");
    ASSERT_EQ(got.ok(), want.has_value()) << "graph " << i;
    if (!want) continue;
    EXPECT_EQ(got->edge_ids, *want) << "graph " << i;
    ++compared;
  }
  EXPECT_GT(compared, 100);
}

TEST(Route, TruncationStopsShortOfStation) {
  const auto map = load_roadmap(fixture("maps/straight.json"));
  const auto route = plan_global_route(map, {0, 5.0}, "East");
  ASSERT_TRUE(route.ok());
  const TaskState task;
  const auto cut = truncate_route(*route, map, task, 10.0);
  EXPECT_EQ(cut.destination, "Mid");
  EXPECT_NEAR(cut.goal_s, 60.0, 1e-9);
  EXPECT_EQ(cut.original_destination, std::optional<std::string>("East"));
  // Within the safety margin of the goal nothing changes.
  EXPECT_EQ(truncate_route(*route, map, task, 127.0).goal_s, route->goal_s);
}

TEST(Dwell, ResumeNeedsClearSurroundingsAndElapsedDwell) {
  TaskState task;
  task.phase = TaskPhase::kDwelling;
  task.dwell_duration = 1.0;
  const geometry::OrientedBox ego{{0, 0}, 0.0, 4.35, 1.63};
  world::AgentState ped;
  ped.position = {0.0, 1.5};
  for (int i = 0; i < 20; ++i) EXPECT_FALSE(resume_check(task, ego, {ped}, 0.1));
  ped.position = {0.0, 10.0};
  bool resumed = false;
  for (int i = 0; i < 20 && !resumed; ++i) resumed = resume_check(task, ego, {ped}, 0.1);
  EXPECT_TRUE(resumed);
}

}  // namespace
}  // namespace shuttle::roadmap
