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

#include "shuttle/control.hpp"

namespace shuttle::oracle {

struct GridSolution {
  std::vector<control::ControlCommand> inputs;
  double cost{0.0};
  long evaluated{0};
};

// Exhaustive search over an input grid that honours the same box and
// rate limits as the tracker. `points` values per axis per step.
GridSolution grid_search_inputs(const control::VehicleState& x0,
                                const std::vector<control::ReferencePoint>& ref,
                                const control::ControlCommand& previous, int horizon,
                                int points, const control::MpcParams& p,
                                const control::VehicleParams& vp = {});

}  // namespace shuttle::oracle
