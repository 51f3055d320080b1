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

#include <memory>

#include "shuttle/behavior.hpp"
#include "shuttle/motion/speed_search.hpp"
#include "shuttle/motion/st_graph.hpp"
#include "shuttle/motion/trajectory_planner.hpp"
#include "shuttle/roadmap.hpp"
#include "shuttle/world.hpp"

namespace shuttle::scenes {

// Directed graph with a couple of stations. Grid graphs use unit-length
// edges so many routes tie.
roadmap::RoadMap random_graph(world::Rng& rng, bool grid);

// A frame along a straight line or a constant-curvature arc.
frenet::FrenetFrame random_frame(world::Rng& rng, double length, double max_kappa);

// Random static boxes, moving agents and offsets on top of `frame`.
behavior::BehaviorContext random_behavior_scene(world::Rng& rng,
                                                const frenet::FrenetFrame& frame,
                                                int max_obstacles, int max_agents);

struct PlanningScene {
  std::unique_ptr<frenet::FrenetFrame> frame;
  std::unique_ptr<behavior::ReferenceRoute> ref;
  motion::PlanningInput input;
};

// A reference chosen by the behavior layer plus a consistent planner input,
// or nullptr if the behavior layer found every candidate blocked.
std::unique_ptr<PlanningScene> random_planning_scene(world::Rng& rng);

struct SpeedInstance {
  motion::StGraph graph;
  motion::LimitTrack limits;
  double v0{0.0};
  std::optional<double> stop_s;
};

// Random blocked cells and limits over `horizon` seconds. v0 is a multiple
// of 1/64 so lattice arithmetic stays exact.
SpeedInstance random_speed_instance(world::Rng& rng, double horizon, bool constant_limit);

}  // namespace shuttle::scenes
