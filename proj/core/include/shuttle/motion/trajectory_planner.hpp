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

#include <string>
#include <vector>

#include "shuttle/behavior.hpp"
#include "shuttle/motion/path.hpp"
#include "shuttle/motion/speed_limits.hpp"
#include "shuttle/motion/speed_profile.hpp"
#include "shuttle/motion/speed_search.hpp"
#include "shuttle/motion/st_graph.hpp"
#include "shuttle/world.hpp"

namespace shuttle::motion {

inline constexpr double kMotionPredictionHorizon = 8.0;

struct PlannerConfig {
  PathParams path;
  SpeedLimitConfig limits;
  StGraphParams graph;
  SearchParams search;
  SpeedQpParams qp;
  int max_iterations{5};
  double budget_s{0.1};  // wall clock; the first iteration always completes
  double ramp_decel{0.9};
  double tolerance{1e-3};
  double tighten_factor{0.9};
  double tighten_radius{2.0};
  double emergency_decel{2.0};
  double sample_dt{0.1};
};

// Ego state in the reference frame, which starts at the ego reference point.
struct PlanningInput {
  const behavior::ReferenceRoute* ref{nullptr};
  double d0{0.0};
  double heading_error{0.0};  // ego heading minus frame heading
  double v0{0.0};
  double a0{0.0};
  std::vector<geometry::Polygon> static_obstacles;
  // Vulnerable road users near the route, for the clearance speed limit.
  std::vector<world::AgentState> agents;
  std::vector<world::PredictedTrajectory> predictions;
  frenet::EgoDims ego;
  double inflation{0.2};
};

struct TrajectoryPoint {
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double heading{0.0};
  double kappa{0.0};
  double s{0.0};  // along the path
  double v{0.0};
  double a{0.0};
};

struct PlanDiagnostics {
  bool accepted{false};
  bool emergency{false};
  bool qp_refined{false};
  int iterations{0};
  std::string failure;
  double s_end{0.0};
  // Per path sample: the applied limit and whether the deceleration ramp
  // from the current speed relaxed it.
  std::vector<double> limits;
  std::vector<bool> ramp_relaxed;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Path path;
  SpeedProfile profile;
  PlanDiagnostics diagnostics;
};

// Speed limit per path sample before ramp relaxation: route and governor cap,
// curvature limit and clearance limit to vulnerable road users.
std::vector<double> sample_limits(const Path& path, const PlanningInput& in,
                                  const SpeedLimitConfig& cfg);

Trajectory plan_trajectory(const PlanningInput& input, const PlannerConfig& config = {});

// Straight deceleration to rest along `curve` at offset d.
Trajectory emergency_stop(const geometry::Curve& curve, double d, double v0,
                          const PlannerConfig& config, const std::string& reason);

}  // namespace shuttle::motion
