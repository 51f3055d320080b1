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

#include "shuttle/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace shuttle::geometry {

double normalize_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  angle = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (angle < 0.0) angle += kTwoPi;
  return angle - std::numbers::pi;
}

double Aabb::gap(const Aabb& o) const {
  const double dx = std::max({0.0, o.min_x - max_x, min_x - o.max_x});
  const double dy = std::max({0.0, o.min_y - max_y, min_y - o.max_y});
  return std::hypot(dx, dy);
}

Aabb bounding_box(std::span<const Vec2> pts) {
  Aabb box{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const auto& p : pts) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

Polygon OrientedBox::corners() const {
  const Vec2 f = unit_from_heading(heading) * (0.5 * length);
  const Vec2 l = unit_from_heading(heading).perp() * (0.5 * width);
  return {center - f - l, center + f - l, center + f + l, center - f + l};
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 <= 0.0) return distance(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

// True if some edge normal of `a` separates the two vertex sets.
bool has_separating_axis(std::span<const Vec2> a, std::span<const Vec2> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 edge = a[(i + 1) % n] - a[i];
    const Vec2 axis = edge.perp();
    double a_min = std::numeric_limits<double>::infinity();
    double a_max = -a_min;
    for (const auto& p : a) {
      const double v = axis.dot(p);
      a_min = std::min(a_min, v);
      a_max = std::max(a_max, v);
    }
    double b_min = std::numeric_limits<double>::infinity();
    double b_max = -b_min;
    for (const auto& p : b) {
      const double v = axis.dot(p);
      b_min = std::min(b_min, v);
      b_max = std::max(b_max, v);
    }
    if (a_max < b_min || b_max < a_min) return true;
  }
  return false;
}

}  // namespace

bool intersects(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) return false;
  if (!bounding_box(a).overlaps(bounding_box(b))) return false;
  return !has_separating_axis(a, b) && !has_separating_axis(b, a);
}

double polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (intersects(a, b)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2& a0 = a[i];
    const Vec2& a1 = a[(i + 1) % a.size()];
    for (const auto& p : b) best = std::min(best, point_segment_distance(p, a0, a1));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Vec2& b0 = b[i];
    const Vec2& b1 = b[(i + 1) % b.size()];
    for (const auto& p : a) best = std::min(best, point_segment_distance(p, b0, b1));
  }
  return best;
}

bool contains(std::span<const Vec2> polygon, const Vec2& p) {
  if (polygon.size() < 3) return false;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % polygon.size()];
    if ((b - a).cross(p - a) < 0.0) return false;
  }
  return true;
}

double polyline_length(std::span<const Vec2> pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

Polygon make_ccw(Polygon poly) {
  double area2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    area2 += poly[i].cross(poly[(i + 1) % poly.size()]);
  }
  if (area2 < 0.0) std::reverse(poly.begin(), poly.end());
  return poly;
}

}  // namespace shuttle::geometry
