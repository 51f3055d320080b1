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

#include "shuttle/motion/st_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shuttle/conflict.hpp"

namespace shuttle::motion {

StGraph::StGraph(StGraphParams params, double s_end) : params_(params), s_end_(s_end) {
  const auto cols = static_cast<std::size_t>(std::ceil(params.horizon / params.dt - 1e-9));
  intervals_.resize(std::max<std::size_t>(cols, 1));
  rows_ = static_cast<std::size_t>(std::ceil(std::max(0.0, s_end) / params.ds - 1e-9)) + 1;
}

std::size_t StGraph::column_of(double t) const {
  const double c = std::floor(std::max(0.0, t) / params_.dt + 1e-9);
  return std::min(static_cast<std::size_t>(c), intervals_.size() - 1);
}

void StGraph::block(std::size_t column, double s_lo, double s_hi) {
  auto& iv = intervals_[column];
  iv.emplace_back(s_lo, s_hi);
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [a, b] : iv) {
    if (!merged.empty() && a <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, b);
    } else {
      merged.emplace_back(a, b);
    }
  }
  iv = std::move(merged);
}

bool StGraph::cell_blocked(std::size_t column, std::size_t row) const {
  const double lo = static_cast<double>(row) * params_.ds;
  return !free(column, lo, lo + params_.ds);
}

bool StGraph::free(std::size_t column, double s_a, double s_b) const {
  if (s_b < s_a) std::swap(s_a, s_b);
  for (const auto& [lo, hi] : intervals_[column]) {
    if (lo <= s_b && s_a <= hi) return false;
  }
  return true;
}

std::pair<double, double> StGraph::free_span(std::size_t column, double s) const {
  double below = -std::numeric_limits<double>::infinity();
  double above = std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : intervals_[column]) {
    if (hi < s) below = std::max(below, hi);
    if (lo > s) above = std::min(above, lo);
  }
  return {below, above};
}

StGraph build_st_graph(const geometry::Curve& path, double s_end,
                       const std::vector<world::PredictedTrajectory>& predictions,
                       const frenet::EgoDims& ego, double half_width,
                       const StGraphParams& params) {
  StGraph graph(params, s_end);
  if (path.size() < 2) return graph;
  const double front = ego.center_offset + 0.5 * ego.length;
  const double rear = 0.5 * ego.length - ego.center_offset;
  const conflict::CorridorBand band(
      conflict::Corridor{&path, 0.0, half_width, 0.0, path.length(), params.horizon});
  for (const auto& pred : predictions) {
    for (std::size_t k = 0; k < pred.positions.size(); ++k) {
      const double t = pred.time_at(k);
      if (t > params.horizon + 1e-9) break;
      const auto hit = band.touched_interval(pred.footprint_at(k).corners());
      if (!hit) continue;
      graph.block(graph.column_of(t), hit->first - front - params.margin,
                  hit->second + rear + params.margin);
    }
  }
  return graph;
}

}  // namespace shuttle::motion
