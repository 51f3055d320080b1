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

#include "absl/status/statusor.h"
#include "shuttle/motion/st_graph.hpp"

namespace shuttle::motion {

// Speed limit sampled along the path at uniform spacing.
struct LimitTrack {
  double ds{0.5};
  std::vector<double> limits;
  // Samples relaxed to the braking ramp from the current speed. They bound
  // the coarse search but are not enforced as hard limits.
  std::vector<bool> ramp;

  // Conservative limit at s: the smaller of the two bracketing samples, or
  // unbounded if either is on the ramp.
  double at(double s) const;
  // Largest limit within [s - margin, s + margin].
  double window_max(double s, double margin) const;
};

struct SearchParams {
  double accel_step{0.75};
  int accel_levels{2};  // accelerations accel_step * j, j in [-levels, levels]
  double w_progress{1.0};
  double w_accel{0.1};
  double limit_margin{1.0};
};

// Piecewise-constant acceleration profile on the graph's time grid.
struct CoarseProfile {
  double dt{0.5};
  std::vector<double> s;  // layer positions, s[0] = s0
  std::vector<double> v;
  std::vector<double> a;  // a[k] acts over [t_k, t_{k+1}]
  double cost{0.0};

  double s_at(double t) const;
  double v_at(double t) const;
};

// Level that brakes to rest within one step, for speeds the lattice cannot
// bring to exactly zero. Only levels of 0 may follow it.
inline constexpr int kBrakeToRest = 1 << 20;

// Cost of an acceleration sequence, or nullopt if it is inadmissible.
std::optional<double> sequence_cost(const StGraph& graph, const LimitTrack& limits,
                                    double s0, double v0, const std::vector<int>& levels,
                                    const SearchParams& params = {},
                                    CoarseProfile* profile = nullptr);

// Exact minimum-cost search over the acceleration lattice. Positions and
// speeds reachable from (s0, v0) form an integer lattice, so equal states
// are merged exactly and dynamic programming over layers is optimal. A
// moving state slow enough to stop within one step at an admissible
// deceleration may also brake to rest and stay there.
// Infeasible (ResourceExhausted) when no sequence reaches the horizon.
absl::StatusOr<CoarseProfile> search_speed(const StGraph& graph, const LimitTrack& limits,
                                           double s0, double v0,
                                           const SearchParams& params = {});

}  // namespace shuttle::motion
