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

#include "shuttle/motion/speed_limits.hpp"

#include <cmath>
#include <stdexcept>

namespace shuttle::motion {

void validate(const SpeedLimitConfig& cfg) {
  if (!(cfg.a_lat > 0.0)) throw std::invalid_argument("a_lat must be positive");
  if (!(0.0 < cfg.delta_min && cfg.delta_min < cfg.delta_mdn &&
        cfg.delta_mdn < cfg.delta_max)) {
    throw std::invalid_argument("clearance thresholds must satisfy 0 < min < mdn < max");
  }
  if (!(0.0 < cfg.v_min && cfg.v_min <= cfg.v_mdn && cfg.v_mdn <= cfg.v_max)) {
    throw std::invalid_argument("speed tiers must satisfy 0 < min <= mdn <= max");
  }
}

std::optional<double> curvature_speed_limit(double kappa, double a_lat) {
  if (kappa == 0.0) return std::nullopt;
  return std::sqrt(a_lat / std::abs(kappa));
}

double clearance_speed_limit(double c, const SpeedLimitConfig& cfg) {
  if (c < cfg.delta_min) return cfg.v_min;
  if (c < cfg.delta_mdn) {
    const double w = (c - cfg.delta_min) / (cfg.delta_mdn - cfg.delta_min);
    return cfg.v_min + w * (cfg.v_mdn - cfg.v_min);
  }
  if (c < cfg.delta_max) {
    const double w = (c - cfg.delta_mdn) / (cfg.delta_max - cfg.delta_mdn);
    return cfg.v_mdn + w * (cfg.v_max - cfg.v_mdn);
  }
  return cfg.v_max;
}

}  // namespace shuttle::motion
