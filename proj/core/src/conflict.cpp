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

#include "shuttle/conflict.hpp"

#include <algorithm>
#include <cmath>

namespace shuttle::conflict {

CorridorBand::CorridorBand(const Corridor& corridor) : corridor_(corridor) {
  const auto& curve = *corridor.curve;
  std::vector<double> cuts{corridor.s_begin};
  for (const auto& smp : curve.samples()) {
    if (smp.s > corridor.s_begin && smp.s < corridor.s_end) cuts.push_back(smp.s);
  }
  if (corridor.s_end > corridor.s_begin) cuts.push_back(corridor.s_end);

  std::vector<geometry::Vec2> all;
  const double lo = corridor.d - corridor.half_width;
  const double hi = corridor.d + corridor.half_width;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    geometry::Polygon quad{curve.point_at(cuts[i], lo), curve.point_at(cuts[i + 1], lo),
                           curve.point_at(cuts[i + 1], hi), curve.point_at(cuts[i], hi)};
    quad_boxes_.push_back(geometry::bounding_box(quad));
    quad_s_.emplace_back(cuts[i], cuts[i + 1]);
    all.insert(all.end(), quad.begin(), quad.end());
    quads_.push_back(std::move(quad));
  }
  bounds_ = geometry::bounding_box(all);
}

bool CorridorBand::intersects(const geometry::Polygon& poly) const {
  if (quads_.empty()) return false;
  const auto box = geometry::bounding_box(poly);
  if (!box.overlaps(bounds_)) return false;
  for (std::size_t i = 0; i < quads_.size(); ++i) {
    if (box.overlaps(quad_boxes_[i]) && geometry::intersects(quads_[i], poly)) return true;
  }
  return false;
}

std::optional<std::pair<double, double>> CorridorBand::touched_interval(
    const geometry::Polygon& poly) const {
  if (quads_.empty()) return std::nullopt;
  const auto box = geometry::bounding_box(poly);
  if (!box.overlaps(bounds_)) return std::nullopt;
  std::optional<std::pair<double, double>> out;
  for (std::size_t i = 0; i < quads_.size(); ++i) {
    if (!box.overlaps(quad_boxes_[i]) || !geometry::intersects(quads_[i], poly)) continue;
    if (!out) {
      out = quad_s_[i];
    } else {
      out->first = std::min(out->first, quad_s_[i].first);
      out->second = std::max(out->second, quad_s_[i].second);
    }
  }
  return out;
}

std::optional<Conflict> conflict(const CorridorBand& band,
                                 const world::PredictedTrajectory& pred) {
  const Corridor& c = band.corridor();
  for (std::size_t k = 0; k < pred.positions.size(); ++k) {
    const double t = pred.time_at(k);
    if (t > c.horizon + 1e-9) break;
    const auto poly = pred.footprint_at(k).corners();
    if (!band.intersects(poly)) continue;
    const double s = std::clamp(c.curve->project(pred.positions[k]).s, c.s_begin, c.s_end);
    return Conflict{t, s, k};
  }
  return std::nullopt;
}

std::optional<Conflict> conflict(const Corridor& corridor,
                                 const world::PredictedTrajectory& pred) {
  return conflict(CorridorBand(corridor), pred);
}

}  // namespace shuttle::conflict
