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

#include <vector>

#include "shuttle/curve.hpp"
#include "shuttle/frenet.hpp"

namespace shuttle::motion {

// tan(max steer 0.6 rad) / wheelbase 2.5 m.
inline constexpr double kMaxPathCurvature = 0.27365;

struct PathParams {
  double w_prior{0.02};
  double w_smooth{200.0};
  double w_init{1e4};
  double w_obstacle{50.0};
  double buffer{0.3};
  double w_curvature{1e4};
  double kappa_max{kMaxPathCurvature};
  int max_iterations{30};
  double tolerance{1e-6};
};

struct PathRequest {
  const frenet::FrenetFrame* frame{nullptr};
  double target_offset{0.0};  // d_t, mean of the smoothness prior
  double start_offset{0.0};
  double start_slope{0.0};    // d(offset)/ds at the vehicle
  std::vector<geometry::Polygon> obstacles;
  double inflation{0.0};
  frenet::EgoDims ego;
  // Obstacle factors only apply up to this frame position (stop point).
  double obstacle_horizon{1e9};
  // Per frame sample |kappa| caps; empty means kappa_max everywhere.
  std::vector<double> curvature_caps;
};

struct Path {
  geometry::Curve curve;  // own arc length
  std::vector<double> frame_s;  // frame position of each curve sample
  std::vector<double> support_offsets;  // lateral offsets at frame samples
  std::vector<double> objective_history;  // accepted iterates, first = initial
  int iterations{0};
  bool converged{false};

  double length() const { return curve.length(); }
  double frame_s_at(double path_s) const;
  double path_s_at(double frame_s) const;
};

// Damped Gauss-Newton (Levenberg) MAP estimate of lateral offsets under a
// smoothness prior with hinge factors for obstacle clearance and curvature.
Path generate_path(const PathRequest& request, const PathParams& params = {});

// Objective at the given support offsets; exposed for verification.
double path_objective(const PathRequest& request, const PathParams& params,
                      const std::vector<double>& offsets);

}  // namespace shuttle::motion
