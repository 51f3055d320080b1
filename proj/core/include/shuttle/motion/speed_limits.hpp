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

namespace shuttle::motion {

struct SpeedLimitConfig {
  double a_lat{1.0};
  double delta_min{0.3};
  double delta_mdn{1.0};
  double delta_max{2.0};
  double v_min{0.5};
  double v_mdn{1.5};
  double v_max{4.17};
};

// Throws std::invalid_argument if thresholds or tiers are out of order.
void validate(const SpeedLimitConfig& cfg);

// sqrt(a_lat / |kappa|); nullopt on a straight path, where callers clamp to
// the route cap instead.
std::optional<double> curvature_speed_limit(double kappa, double a_lat);

// Piecewise clearance limit, continuous in c. Each ramp interpolates over the
// clearance normalised to its own threshold interval.
double clearance_speed_limit(double clearance, const SpeedLimitConfig& cfg);

}  // namespace shuttle::motion
