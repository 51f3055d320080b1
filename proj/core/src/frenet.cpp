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

#include "shuttle/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"

namespace shuttle::frenet {

absl::StatusOr<FrenetFrame> build_frame(const roadmap::GlobalRoute& route, double from_s,
                                        double window, double ds) {
  if (!(window > 0.0) || !(ds > 0.0)) {
    return absl::InvalidArgumentError("window and spacing must be positive");
  }
  if (from_s < 0.0 || from_s > route.length()) {
    return absl::OutOfRangeError("frame origin lies outside the route");
  }
  const double remaining = route.length() - from_s;
  const double s_max = std::min(window, remaining);
  const auto intervals = static_cast<std::size_t>(std::floor(s_max / ds + 1e-9));
  if (intervals < 1) return absl::OutOfRangeError("window empty at route end");

  FrenetFrame frame;
  frame.origin_s = from_s;
  frame.curve = geometry::Curve::from_sampler(
      [&route, from_s](double s) { return route.position_at(from_s + s); }, intervals + 1,
      ds);
  frame.s_max = frame.curve.length();
  frame.tags.reserve(frame.size());
  frame.speed_limits.reserve(frame.size());
  for (const auto& smp : frame.curve.samples()) {
    const auto& seg = route.segment_at(from_s + smp.s);
    frame.tags.push_back(seg.tag);
    frame.speed_limits.push_back(seg.speed_limit);
  }
  return frame;
}

absl::StatusOr<geometry::CurvePoint> project(const FrenetFrame& frame, const Vec2& p,
                                             double lateral_bound) {
  const auto cp = frame.curve.project(p);
  if (std::abs(cp.d) > lateral_bound) {
    return absl::OutOfRangeError("point lies outside the lateral corridor");
  }
  return cp;
}

geometry::OrientedBox ego_box_at(const geometry::Curve& curve, double s, double d,
                                 const EgoDims& ego) {
  const double sc = s + ego.center_offset;
  return {curve.point_at(sc, d), curve.heading_at(sc), ego.length, ego.width};
}

ClearanceProfile clearance_profile(const FrenetFrame& frame, double d,
                                   const std::vector<Polygon>& obstacles,
                                   double inflation, const EgoDims& ego,
                                   double clearance_cap) {
  ClearanceProfile prof;
  prof.d = d;
  prof.s_m = frame.s_max;
  std::vector<geometry::Aabb> boxes;
  boxes.reserve(obstacles.size());
  for (const auto& o : obstacles) boxes.push_back(geometry::bounding_box(o));

  const auto& samples = frame.curve.samples();
  prof.clearances.reserve(samples.size());
  bool blocked = false;
  for (const auto& smp : samples) {
    const auto poly = ego_box_at(frame.curve, smp.s, d, ego).corners();
    const auto ego_aabb = geometry::bounding_box(poly);
    double c = clearance_cap;
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      // Boxes further than the cap cannot lower the clamped clearance.
      if (ego_aabb.gap(boxes[i]) - inflation >= c) continue;
      const double dist = geometry::polygon_distance(poly, obstacles[i]) - inflation;
      c = std::min(c, std::max(0.0, dist));
    }
    prof.clearances.push_back(c);
    if (!blocked && c <= 0.0) {
      blocked = true;
      prof.s_m = smp.s;
    }
  }

  double sum = 0.0;
  double min_c = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].s < prof.s_m)) break;
    sum += prof.clearances[i];
    min_c = std::min(min_c, prof.clearances[i]);
    ++count;
  }
  if (count == 0) {
    prof.c_avg = 0.0;
    prof.c_min = 0.0;
  } else {
    prof.c_avg = sum / static_cast<double>(count);
    prof.c_min = min_c;
  }
  return prof;
}

}  // namespace shuttle::frenet
