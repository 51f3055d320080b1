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

#include "shuttle/curve.hpp"
#include "shuttle/world.hpp"

namespace shuttle::conflict {

// Band swept by the ego along a lateral offset of a reference curve.
struct Corridor {
  const geometry::Curve* curve{nullptr};
  double d{0.0};
  double half_width{0.0};
  double s_begin{0.0};
  double s_end{0.0};
  double horizon{4.0};
};

struct Conflict {
  double t{0.0};
  double s{0.0};
  std::size_t step{0};
};

// Earliest prediction step (t <= horizon) whose agent box intersects the
// corridor band, tested per step with exact convex-polygon intersection.
std::optional<Conflict> conflict(const Corridor& corridor,
                                 const world::PredictedTrajectory& pred);

// Precomputed band quads for repeated queries against one corridor.
class CorridorBand {
 public:
  explicit CorridorBand(const Corridor& corridor);

  bool intersects(const geometry::Polygon& poly) const;
  // Arc interval of band quads touched by `poly`, if any.
  std::optional<std::pair<double, double>> touched_interval(
      const geometry::Polygon& poly) const;
  const Corridor& corridor() const { return corridor_; }

 private:
  Corridor corridor_;
  std::vector<geometry::Polygon> quads_;
  std::vector<geometry::Aabb> quad_boxes_;
  std::vector<std::pair<double, double>> quad_s_;
  geometry::Aabb bounds_;
};

std::optional<Conflict> conflict(const CorridorBand& band,
                                 const world::PredictedTrajectory& pred);

}  // namespace shuttle::conflict
