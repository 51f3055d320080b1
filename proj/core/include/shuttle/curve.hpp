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

#include <functional>
#include <span>
#include <vector>

#include "shuttle/geometry.hpp"

namespace shuttle::geometry {

struct CurveSample {
  double s{0.0};
  Vec2 position;
  double heading{0.0};
  double kappa{0.0};
};

struct CurvePoint {
  double s{0.0};
  double d{0.0};
};

// Arc-length parameterized planar curve sampled at uniform spacing. Between
// samples the curve is the cubic Hermite spline through sample positions
// and unit tangents, so curved sections are followed to well below a
// millimetre at 0.5 m spacing.
class Curve {
 public:
  Curve() = default;

  // Samples `count` points at s = k * ds (k = 0..count-1) from a sampler
  // defined on local arc length. Headings come from central differences of
  // positions, curvature from central differences of unwrapped heading.
  static Curve from_sampler(const std::function<Vec2(double)>& sampler,
                            std::size_t count, double ds);

  // Resamples a polyline on its own arc length.
  static Curve from_polyline(std::span<const Vec2> pts, double ds);

  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  double ds() const { return ds_; }
  double length() const { return samples_.empty() ? 0.0 : samples_.back().s; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  const CurveSample& operator[](std::size_t i) const { return samples_[i]; }

  Vec2 point_at(double s, double d = 0.0) const;
  double heading_at(double s) const;
  double kappa_at(double s) const;
  Vec2 tangent_at(double s) const;

  // Foot point of `p` on the curve. Outside [0, length] the end tangents are
  // extended linearly.
  CurvePoint project(const Vec2& p) const;

  // Quadrilateral covering [s_k, s_{k+1}] x [d - half_width, d + half_width].
  Polygon band_quad(std::size_t k, double d, double half_width) const;

 private:
  struct Eval {
    Vec2 position;
    Vec2 derivative;
  };
  Eval evaluate(double s) const;
  double refine_on_segment(const Vec2& p, std::size_t seg) const;

  std::vector<CurveSample> samples_;
  double ds_{0.5};
};

}  // namespace shuttle::geometry
