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

#include "shuttle/sim/announce.hpp"

namespace shuttle::sim {

std::string_view to_string(Announcement a) {
  switch (a) {
    case Announcement::kDeparting:
      return "Departing";
    case Announcement::kYielding:
      return "Yielding";
    case Announcement::kPedestrianWarning:
      return "PedestrianWarning";
    case Announcement::kArriving:
      return "Arriving";
  }
  return "";
}

std::vector<Announcement> Announcer::announce(const AnnounceContext& ctx) {
  std::vector<Announcement> wanted;
  if (ctx.departed) wanted.push_back(Announcement::kDeparting);
  if (ctx.yielding) wanted.push_back(Announcement::kYielding);
  if (ctx.pedestrian_clearance && *ctx.pedestrian_clearance < params_.warning_clearance &&
      ctx.speed > params_.warning_speed) {
    wanted.push_back(Announcement::kPedestrianWarning);
  }
  if (ctx.distance_to_station && *ctx.distance_to_station >= 0.0 &&
      *ctx.distance_to_station <= params_.arrival_distance) {
    wanted.push_back(Announcement::kArriving);
  }
  std::vector<Announcement> out;
  for (auto a : wanted) {
    auto it = last_.find(a);
    if (it != last_.end() && ctx.t - it->second < params_.debounce) continue;
    last_[a] = ctx.t;
    out.push_back(a);
  }
  return out;
}

}  // namespace shuttle::sim
