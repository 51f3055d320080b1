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

#include "absl/status/statusor.h"
#include "shuttle/frenet.hpp"
#include "shuttle/roadmap.hpp"
#include "shuttle/world.hpp"

namespace shuttle::behavior {

using geometry::Polygon;

struct BehaviorConfig {
  double w_s{1.0};
  double w_d1{0.5};
  double w_d2{0.3};
  double w_o1{0.5};
  double w_o2{1.0};
  double dynamic_penalty{1e3};
  double candidate_spacing{0.25};
  double lane_change_threshold{0.5};  // d_l
  double planning_frequency{2.0};     // f_p
  double window{40.0};                // s_max
  double truncation_margin{0.5};
  // Clearances below this are floored inside J_o so an unblocked candidate
  // never outweighs the dynamic penalty.
  double clearance_floor{1e-2};
  bool rate_limit{true};
};

struct ScenarioConfig {
  roadmap::ScenarioTag tag{roadmap::ScenarioTag::kCommon};
  double inflation{0.2};  // w_o
  double reference_speed{roadmap::kMaxRouteSpeed};
  double band{1.0};
  bool lane_change_allowed{true};
  bool use_predictions{true};
  bool gate_active{false};
};

ScenarioConfig scenario_preset(roadmap::ScenarioTag tag);

struct CandidateEvaluation {
  double d{0.0};
  double s_m{0.0};
  double c_avg{0.0};
  double c_min{0.0};
  double j_s{0.0};
  double j_d{0.0};
  double j_o{0.0};
  double j_dyn{0.0};
  double j_total{0.0};
};

struct IntersectionInfo {
  double stop_line_s{0.0};  // frame coordinates
  std::vector<Polygon> areas;
};

struct BehaviorContext {
  const frenet::FrenetFrame* frame{nullptr};
  std::vector<Polygon> static_obstacles;
  std::vector<world::PredictedTrajectory> predictions;
  BehaviorConfig cfg;
  ScenarioConfig scn;
  frenet::EgoDims ego;
  double d0{0.0};
  double ego_speed{0.0};
  std::optional<IntersectionInfo> intersection;
  // Frame position of the current destination if it lies in the window.
  std::optional<double> destination_s;
};

enum class GateDecision { kNotApplicable, kProceed, kStopAtLine };

struct ReferenceRoute {
  frenet::FrenetFrame frame;
  double d_t{0.0};
  bool truncated{false};  // pi_s
  double stop_s{0.0};     // valid when truncated
  double speed_cap{roadmap::kMaxRouteSpeed};
  bool hold_at_line{false};
  double line_s{0.0};
  std::optional<double> destination_s;
  GateDecision gate{GateDecision::kNotApplicable};
  std::vector<CandidateEvaluation> evaluations;

  // Nearest stop the motion planner has to honour, if any.
  std::optional<double> terminal_stop() const;
};

std::vector<double> candidates(const ScenarioConfig& scn, const BehaviorConfig& cfg,
                               double d0);

CandidateEvaluation evaluate(double d, const BehaviorContext& ctx);

// Candidate ordering: J_total, then |d|, then d.
bool better(const CandidateEvaluation& a, const CandidateEvaluation& b);

struct GovernorParams {
  double v_max{roadmap::kMaxRouteSpeed};
  double e_lo{0.2};
  double e_hi{0.6};
  double v_crawl{0.8};
};

double governor(double localization_error, const GovernorParams& params = {});

GateDecision intersection_gate(const std::vector<Polygon>& areas,
                               const std::vector<world::PredictedTrajectory>& predictions,
                               const frenet::FrenetFrame& frame, double d_t,
                               double half_width);

bool is_all_blocked(const absl::Status& status);

class BehaviorPlanner {
 public:
  explicit BehaviorPlanner(GovernorParams governor = {}) : governor_(governor) {}

  // AllBlocked (FailedPrecondition) when every candidate is blocked at s = 0.
  absl::StatusOr<ReferenceRoute> select_reference(const BehaviorContext& ctx,
                                                  const roadmap::TaskState& task,
                                                  double localization_error, double t);

  std::optional<double> committed_offset() const { return committed_; }
  double last_commit_time() const { return last_commit_; }
  void reset() {
    committed_.reset();
    last_commit_ = 0.0;
  }

 private:
  GovernorParams governor_;
  std::optional<double> committed_;
  double last_commit_{0.0};
};

}  // namespace shuttle::behavior
