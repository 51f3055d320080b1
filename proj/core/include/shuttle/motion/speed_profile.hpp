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

#include <optional>
#include <vector>

#include "shuttle/motion/speed_search.hpp"
#include "shuttle/motion/st_graph.hpp"

namespace shuttle::motion {

struct CubicSegment {
  double t0{0.0};
  double duration{0.0};
  double s0{0.0};
  double v0{0.0};
  double a0{0.0};
  double jerk{0.0};
};

// Piecewise-cubic s(t). Past the last segment the end state is held.
class SpeedProfile {
 public:
  SpeedProfile() = default;
  explicit SpeedProfile(std::vector<CubicSegment> segments)
      : segments_(std::move(segments)) {}

  const std::vector<CubicSegment>& segments() const { return segments_; }
  double duration() const;
  double s_at(double t) const;
  double v_at(double t) const;
  double a_at(double t) const;
  double jerk_at(double t) const;

 private:
  const CubicSegment* find(double t, double& tau) const;
  std::vector<CubicSegment> segments_;
};

SpeedProfile coarse_to_profile(const CoarseProfile& coarse);

struct SpeedQpParams {
  double w_ref{0.1};
  double a_max{1.2};
  double collocation_dt{0.1};
  double stop_capture{1.0};
  int max_passes{4};
};

struct CollocationBound {
  double t{0.0};
  double v_max{0.0};
  double s_lo{0.0};
  double s_hi{0.0};
};

// Bounds at each collocation time after t = 0. Limits are evaluated at the
// coarse position; position bounds are the free span of the st-graph column
// around it, capped at the graph end.
std::vector<CollocationBound> collocation_bounds(const StGraph& graph,
                                                 const LimitTrack& limits,
                                                 const CoarseProfile& coarse,
                                                 const SpeedQpParams& params = {});

struct SpeedRefinement {
  SpeedProfile profile;
  bool refined{false};  // false: the coarse profile was kept
  bool terminal_stop{false};
  int qp_iterations{0};
};

// Minimum-jerk cubic spline near the coarse profile. Jerk per coarse step is
// the decision variable, so position, speed and acceleration stay continuous.
// With `stop_s` inside capture range of a halting coarse profile the spline
// ends at rest on it. Speed bounds are re-evaluated at the refined positions
// and the problem re-solved until they hold, at most `max_passes` times.
SpeedRefinement refine_speed(const CoarseProfile& coarse, double a0, const StGraph& graph,
                             const LimitTrack& limits, std::optional<double> stop_s,
                             const SpeedQpParams& params = {});

}  // namespace shuttle::motion
