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

#include "absl/status/statusor.h"
#include "shuttle/curve.hpp"
#include "shuttle/geometry.hpp"
#include "shuttle/roadmap.hpp"

namespace shuttle::frenet {

using geometry::Polygon;
using geometry::Vec2;

inline constexpr double kDefaultSampleSpacing = 0.5;
inline constexpr double kDefaultClearanceCap = 5.0;
inline constexpr double kMaxLateralOffset = 10.0;

// Ego footprint relative to the vehicle reference point (rear axle). The box
// centre sits `center_offset` ahead of the reference point.
struct EgoDims {
  double length{4.35};
  double width{1.63};
  double center_offset{1.25};
};

struct FrenetFrame {
  geometry::Curve curve;
  // Route arc position of sample 0.
  double origin_s{0.0};
  double s_max{0.0};
  // Per-sample route attributes, aligned with curve samples.
  std::vector<roadmap::ScenarioTag> tags;
  std::vector<double> speed_limits;

  double ds() const { return curve.ds(); }
  std::size_t size() const { return curve.size(); }
  Vec2 point_at(double s, double d = 0.0) const { return curve.point_at(s, d); }
  double heading_at(double s) const { return curve.heading_at(s); }
  double kappa_at(double s) const { return curve.kappa_at(s); }
};

absl::StatusOr<FrenetFrame> build_frame(const roadmap::GlobalRoute& route, double from_s,
                                        double window,
                                        double ds = kDefaultSampleSpacing);

// Frenet coordinates of `p`; OutOfRange beyond the lateral corridor bound.
absl::StatusOr<geometry::CurvePoint> project(const FrenetFrame& frame, const Vec2& p,
                                             double lateral_bound = kMaxLateralOffset);

// Ego box with its reference point on the frame at (s, d), aligned with the
// frame heading.
geometry::OrientedBox ego_box_at(const geometry::Curve& curve, double s, double d,
                                 const EgoDims& ego);

struct ClearanceProfile {
  double d{0.0};
  double s_m{0.0};
  double c_avg{0.0};
  double c_min{0.0};
  std::vector<double> clearances;
};

ClearanceProfile clearance_profile(const FrenetFrame& frame, double d,
                                   const std::vector<Polygon>& obstacles,
                                   double inflation, const EgoDims& ego,
                                   double clearance_cap = kDefaultClearanceCap);

}  // namespace shuttle::frenet
