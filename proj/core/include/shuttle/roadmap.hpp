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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "shuttle/geometry.hpp"
#include "shuttle/world.hpp"

namespace shuttle::roadmap {

using geometry::Polygon;
using geometry::Vec2;

inline constexpr int kMapSchemaVersion = 1;
// 15 km/h vehicle limit as written in map files.
inline constexpr double kMaxRouteSpeed = 4.17;

enum class ScenarioTag { kCommon, kParking, kIntersection };

std::string_view to_string(ScenarioTag tag);
std::optional<ScenarioTag> scenario_tag_from_string(std::string_view name);

struct Edge {
  int id{0};
  int from{0};
  int to{0};
  std::vector<Vec2> polyline;
  double length{0.0};
  ScenarioTag tag{ScenarioTag::kCommon};
  double speed_limit{kMaxRouteSpeed};
  double half_width_left{2.0};
  double half_width_right{2.0};

  bool operator==(const Edge&) const = default;
};

struct StationRef {
  int edge{0};
  double s{0.0};
  bool operator==(const StationRef&) const = default;
};

struct RoadMap {
  std::vector<Vec2> nodes;  // indexed by node id
  std::vector<Edge> edges;  // indexed by edge id
  std::map<std::string, StationRef> stations;
  std::map<int, std::vector<Polygon>> observation_areas;
  std::map<int, double> stop_lines;
  std::vector<Polygon> curbs;

  bool operator==(const RoadMap&) const = default;
};

// Load or validation failure; each diagnostic names the offending element.
class MapError : public std::runtime_error {
 public:
  explicit MapError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

RoadMap load_roadmap(std::string_view text);
RoadMap load_roadmap_file(const std::string& path);
std::string serialize_roadmap(const RoadMap& map);

// Empty when every invariant holds.
std::vector<std::string> check_invariants(const RoadMap& map);

struct RouteSegment {
  int edge_id{0};
  double s_begin{0.0};
  double s_end{0.0};
  ScenarioTag tag{ScenarioTag::kCommon};
  double speed_limit{kMaxRouteSpeed};
  double half_width_left{0.0};
  double half_width_right{0.0};
};

struct EdgePosition {
  int edge{0};
  double s{0.0};
};

// Stitched route over whole edges. `start_s` and `goal_s` are positions on
// the stitched arc length; the geometry extends to the end of the last edge.
struct GlobalRoute {
  std::vector<int> edge_ids;
  std::vector<Vec2> centerline;
  std::vector<double> cumulative_s;
  std::vector<RouteSegment> segments;
  std::string destination;
  double start_s{0.0};
  double goal_s{0.0};
  bool active{true};
  // Set while the route ends at a temporary drop-off destination.
  std::optional<std::string> original_destination;

  double length() const { return cumulative_s.empty() ? 0.0 : cumulative_s.back(); }
  double route_length() const { return goal_s - start_s; }
  Vec2 position_at(double s) const;
  const RouteSegment& segment_at(double s) const;
  EdgePosition edge_position_at(double s) const;
  // Route arc position of an edge location, if the edge is on the route.
  std::optional<double> route_s(int edge, double edge_s) const;
};

absl::StatusOr<GlobalRoute> plan_global_route(const RoadMap& map, EdgePosition start,
                                              const std::string& goal_station);

enum class TaskPhase { kDriving, kDwelling, kIdle };

struct TaskState {
  TaskPhase phase{TaskPhase::kDriving};
  double dwell_timer{0.0};
  double dwell_duration{8.0};
  std::optional<std::string> pending_dropoff;
  double pedestrian_clear_radius{2.0};
};

struct TruncationParams {
  double safety_margin{5.0};
  double vehicle_width{1.63};
  double width_clearance{0.5};
  double scan_step{0.5};
};

// Handles an on-board drop-off button press. Ends the route at the nearest
// station beyond current_s + margin, else at the first point whose right-hand
// drivable half-width fits the vehicle. Requests while dwelling, on inactive
// routes, or with nothing ahead leave the route unchanged.
GlobalRoute truncate_route(const GlobalRoute& route, const RoadMap& map,
                           const TaskState& task, double current_s,
                           const TruncationParams& params = {});

// Advances the dwell timer by clock_dt and reports whether the shuttle may
// depart: the full dwell has elapsed and no pedestrian is within the clear
// radius of the ego footprint.
bool resume_check(TaskState& task, const geometry::OrientedBox& ego,
                  const std::vector<world::AgentState>& nearby, double clock_dt);

}  // namespace shuttle::roadmap
