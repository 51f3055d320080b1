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

#include "mpc_oracle.hpp"

#include <algorithm>
#include <functional>

namespace shuttle::oracle {

GridSolution grid_search_inputs(const control::VehicleState& x0,
                                const std::vector<control::ReferencePoint>& ref,
                                const control::ControlCommand& previous, int horizon,
                                int points, const control::MpcParams& p,
                                const control::VehicleParams& vp) {
  GridSolution best;
  bool found = false;
  std::vector<control::ControlCommand> u(static_cast<std::size_t>(horizon));
  const double jerk_step = p.max_jerk * p.dt;

  auto axis = [points](double lo, double hi) {
    std::vector<double> out;
    if (hi < lo) return out;
    if (points == 1 || hi == lo) return std::vector<double>{0.5 * (lo + hi)};
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
    return out;
  };

  std::function<void(int, const control::ControlCommand&)> rec =
      [&](int k, const control::ControlCommand& last) {
        if (k == horizon) {
          ++best.evaluated;
          const double c = control::horizon_cost(x0, u, ref, previous, p, vp);
          if (!found || c < best.cost) {
            found = true;
            best.cost = c;
            best.inputs = u;
          }
          return;
        }
        const auto accels = axis(std::max(-vp.max_accel, last.accel - jerk_step),
                                 std::min(vp.max_accel, last.accel + jerk_step));
        const auto steers = axis(std::max(-vp.max_steer, last.steer - p.max_steer_rate),
                                 std::min(vp.max_steer, last.steer + p.max_steer_rate));
        for (double a : accels) {
          for (double d : steers) {
            u[static_cast<std::size_t>(k)] = {a, d, false};
            rec(k + 1, u[static_cast<std::size_t>(k)]);
          }
        }
      };
  rec(0, previous);
  return best;
}

}  // namespace shuttle::oracle
