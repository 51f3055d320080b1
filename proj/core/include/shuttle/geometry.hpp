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

#include <cmath>
#include <span>
#include <vector>

namespace shuttle::geometry {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  // Counter-clockwise perpendicular.
  constexpr Vec2 perp() const { return {-y, x}; }
};

inline Vec2 unit_from_heading(double heading) {
  return {std::cos(heading), std::sin(heading)};
}

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

double normalize_angle(double angle);

// Convex polygon, vertices in counter-clockwise order.
using Polygon = std::vector<Vec2>;

struct Aabb {
  double min_x{0.0};
  double min_y{0.0};
  double max_x{0.0};
  double max_y{0.0};

  bool overlaps(const Aabb& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y &&
           o.min_y <= max_y;
  }
  // Separation between boxes, 0 when they overlap.
  double gap(const Aabb& o) const;
};

Aabb bounding_box(std::span<const Vec2> pts);

struct OrientedBox {
  Vec2 center;
  double heading{0.0};
  double length{0.0};
  double width{0.0};

  Polygon corners() const;
};

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Separating-axis test; touching polygons count as intersecting.
bool intersects(std::span<const Vec2> a, std::span<const Vec2> b);

// Minimum Euclidean distance between two convex polygons, 0 if they overlap.
double polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b);

bool contains(std::span<const Vec2> polygon, const Vec2& p);

double polyline_length(std::span<const Vec2> pts);

// Reorders vertices counter-clockwise if given clockwise.
Polygon make_ccw(Polygon poly);

}  // namespace shuttle::geometry
