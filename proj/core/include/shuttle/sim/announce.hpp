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

#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace shuttle::sim {

enum class Announcement { kDeparting, kYielding, kPedestrianWarning, kArriving };

std::string_view to_string(Announcement a);

struct AnnounceContext {
  double t{0.0};
  bool departed{false};  // left Dwelling this tick
  bool yielding{false};  // gate holds at the stop line
  std::optional<double> pedestrian_clearance;
  double speed{0.0};
  std::optional<double> distance_to_station;
};

struct AnnounceParams {
  double warning_clearance{1.0};  // delta_mdn
  double warning_speed{0.5};
  double arrival_distance{5.0};
  double debounce{3.0};
};

// Onboard sound cues. Each kind is emitted at most once per debounce window.
class Announcer {
 public:
  explicit Announcer(AnnounceParams params = {}) : params_(params) {}
  std::vector<Announcement> announce(const AnnounceContext& ctx);

 private:
  AnnounceParams params_;
  std::map<Announcement, double> last_;
};

}  // namespace shuttle::sim
