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
#include <utility>
#include <vector>

#include "shuttle/curve.hpp"
#include "shuttle/frenet.hpp"
#include "shuttle/world.hpp"

namespace shuttle::motion {

struct StGraphParams {
  double ds{0.5};
  double dt{0.5};
  double horizon{8.0};
  double margin{0.5};  // longitudinal buffer added to each blocked interval
};

// Path positions of the ego reference point that collide with predicted
// agents, per time column. Column c covers t in [c*dt, (c+1)*dt).
class StGraph {
 public:
  StGraph() = default;
  StGraph(StGraphParams params, double s_end);

  const StGraphParams& params() const { return params_; }
  double s_end() const { return s_end_; }
  std::size_t columns() const { return intervals_.size(); }
  std::size_t rows() const { return rows_; }

  // Column of time t; times beyond the horizon map to the last column.
  std::size_t column_of(double t) const;
  void block(std::size_t column, double s_lo, double s_hi);

  const std::vector<std::pair<double, double>>& blocked(std::size_t column) const {
    return intervals_[column];
  }
  bool cell_blocked(std::size_t column, std::size_t row) const;
  // True when no blocked interval of the column meets [s_a, s_b].
  bool free(std::size_t column, double s_a, double s_b) const;
  // Largest blocked end below s and smallest blocked start above s.
  std::pair<double, double> free_span(std::size_t column, double s) const;

 private:
  StGraphParams params_;
  double s_end_{0.0};
  std::size_t rows_{0};
  std::vector<std::vector<std::pair<double, double>>> intervals_;
};

// Corridor of half width `half_width` along the path; an agent box that
// touches [s_a, s_b] blocks reference positions
// [s_a - front - margin, s_b + rear + margin].
StGraph build_st_graph(const geometry::Curve& path, double s_end,
                       const std::vector<world::PredictedTrajectory>& predictions,
                       const frenet::EgoDims& ego, double half_width,
                       const StGraphParams& params = {});

}  // namespace shuttle::motion
