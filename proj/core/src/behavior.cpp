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

#include "shuttle/behavior.hpp"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "shuttle/conflict.hpp"

namespace shuttle::behavior {

namespace {
constexpr double kGridEps = 1e-9;
constexpr double kComfortDecel = 1.0;
constexpr double kLinePassTolerance = 0.3;
}  // namespace

ScenarioConfig scenario_preset(roadmap::ScenarioTag tag) {
  ScenarioConfig scn;
  scn.tag = tag;
  switch (tag) {
    case roadmap::ScenarioTag::kCommon:
      break;
    case roadmap::ScenarioTag::kParking:
      scn.inflation = 0.5;
      scn.reference_speed = 0.5 * roadmap::kMaxRouteSpeed;
      scn.use_predictions = true;
      break;
    case roadmap::ScenarioTag::kIntersection:
      scn.band = 0.25;
      scn.gate_active = true;
      break;
  }
  return scn;
}

std::optional<double> ReferenceRoute::terminal_stop() const {
  std::optional<double> stop;
  auto take = [&stop](double s) { stop = stop ? std::min(*stop, s) : s; };
  if (truncated) take(stop_s);
  if (hold_at_line) take(line_s);
  if (destination_s) take(*destination_s);
  return stop;
}

std::vector<double> candidates(const ScenarioConfig& scn, const BehaviorConfig& cfg,
                               double d0) {
  const double spacing = cfg.candidate_spacing;
  const auto n = static_cast<int>(std::floor(scn.band / spacing + kGridEps));
  std::vector<double> out;
  for (int k = -n; k <= n; ++k) out.push_back(k * spacing);
  const double snapped = std::round(d0 / spacing) * spacing;
  out.push_back(snapped);
  if (!scn.lane_change_allowed) {
    std::erase_if(out, [&](double d) {
      return std::abs(d - d0) > cfg.lane_change_threshold + kGridEps;
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < kGridEps; }),
            out.end());
  return out;
}

CandidateEvaluation evaluate(double d, const BehaviorContext& ctx) {
  const auto& frame = *ctx.frame;
  const auto& cfg = ctx.cfg;
  const auto prof = frenet::clearance_profile(frame, d, ctx.static_obstacles,
                                              ctx.scn.inflation, ctx.ego);
  CandidateEvaluation ev;
  ev.d = d;
  ev.s_m = prof.s_m;
  ev.c_avg = prof.c_avg;
  ev.c_min = prof.c_min;
  ev.j_s = frame.s_max > 0.0 ? cfg.w_s * (1.0 - prof.s_m / frame.s_max) : cfg.w_s;
  ev.j_d = cfg.w_d1 * std::abs(d - ctx.d0) + cfg.w_d2 * std::abs(d);
  if (prof.c_min <= 0.0) {
    ev.j_o = cfg.dynamic_penalty;
  } else {
    ev.j_o = cfg.w_o1 / std::max(prof.c_avg, cfg.clearance_floor) +
             cfg.w_o2 / std::max(prof.c_min, cfg.clearance_floor);
  }
  ev.j_dyn = 0.0;
  if (ctx.scn.use_predictions && !ctx.predictions.empty()) {
    conflict::Corridor corridor{&frame.curve, d, 0.5 * ctx.ego.width + ctx.scn.inflation,
                                0.0, frame.s_max, 0.0};
    for (const auto& pred : ctx.predictions) {
      corridor.horizon = pred.horizon;
      const conflict::CorridorBand band(corridor);
      if (conflict::conflict(band, pred)) {
        ev.j_dyn = cfg.dynamic_penalty;
        break;
      }
    }
  }
  ev.j_total = ev.j_s + ev.j_d + ev.j_o + ev.j_dyn;
  return ev;
}

bool better(const CandidateEvaluation& a, const CandidateEvaluation& b) {
  if (a.j_total != b.j_total) return a.j_total < b.j_total;
  if (std::abs(a.d) != std::abs(b.d)) return std::abs(a.d) < std::abs(b.d);
  return a.d < b.d;
}

double governor(double localization_error, const GovernorParams& p) {
  const double e = std::max(0.0, localization_error);
  if (e <= p.e_lo) return p.v_max;
  if (e >= p.e_hi) return p.v_crawl;
  const double w = (e - p.e_lo) / (p.e_hi - p.e_lo);
  return p.v_max + w * (p.v_crawl - p.v_max);
}

GateDecision intersection_gate(const std::vector<Polygon>& areas,
                               const std::vector<world::PredictedTrajectory>& predictions,
                               const frenet::FrenetFrame& frame, double d_t,
                               double half_width) {
  std::optional<conflict::CorridorBand> band;
  for (const auto& pred : predictions) {
    if (pred.positions.empty()) continue;
    const auto now = pred.footprint_at(0).corners();
    const bool inside = std::any_of(areas.begin(), areas.end(), [&](const Polygon& area) {
      return geometry::intersects(area, now);
    });
    if (!inside) continue;
    if (!band) {
      band.emplace(conflict::Corridor{&frame.curve, d_t, half_width, 0.0, frame.s_max,
                                      pred.horizon});
    }
    if (conflict::conflict(*band, pred)) return GateDecision::kStopAtLine;
  }
  return GateDecision::kProceed;
}

bool is_all_blocked(const absl::Status& status) {
  return absl::IsFailedPrecondition(status);
}

absl::StatusOr<ReferenceRoute> BehaviorPlanner::select_reference(
    const BehaviorContext& ctx, const roadmap::TaskState& task, double localization_error,
    double t) {
  if (ctx.frame == nullptr || ctx.frame->size() < 2) {
    return absl::InvalidArgumentError("behavior planning needs a valid frame");
  }
  const auto& cfg = ctx.cfg;
  ReferenceRoute ref;
  ref.frame = *ctx.frame;
  ref.destination_s = ctx.destination_s;
  ref.speed_cap = std::min(ctx.scn.reference_speed, governor(localization_error, governor_));

  std::vector<CandidateEvaluation> evals;
  for (double d : candidates(ctx.scn, cfg, ctx.d0)) evals.push_back(evaluate(d, ctx));
  const bool all_blocked = std::all_of(evals.begin(), evals.end(),
                                       [](const auto& e) { return e.s_m <= 0.0; });
  if (all_blocked) {
    return absl::FailedPreconditionError("all offset candidates are blocked");
  }
  const CandidateEvaluation best = *std::min_element(evals.begin(), evals.end(), better);

  CandidateEvaluation chosen = best;
  if (cfg.rate_limit && committed_) {
    const bool big_jump = std::abs(best.d - *committed_) > cfg.lane_change_threshold;
    const bool too_soon = t - last_commit_ < 1.0 / cfg.planning_frequency;
    if (big_jump && too_soon) {
      auto it = std::find_if(evals.begin(), evals.end(), [&](const auto& e) {
        return std::abs(e.d - *committed_) < kGridEps;
      });
      chosen = it != evals.end() ? *it : evaluate(*committed_, ctx);
    }
  }
  if (!committed_ || chosen.d != *committed_) {
    committed_ = chosen.d;
    last_commit_ = t;
  }
  ref.d_t = chosen.d;
  ref.evaluations = std::move(evals);

  if (chosen.s_m < ctx.frame->s_max) {
    ref.truncated = true;
    ref.stop_s = std::max(0.0, chosen.s_m - cfg.truncation_margin);
  }
  if (task.phase != roadmap::TaskPhase::kDriving) {
    ref.truncated = true;
    ref.stop_s = 0.0;
  }

  if (ctx.intersection) {
    const double line = ctx.intersection->stop_line_s;
    const double braking = ctx.ego_speed * ctx.ego_speed / (2.0 * kComfortDecel);
    // Once the line is behind us or no longer reachable comfortably, the
    // crossing is committed.
    if (line >= -kLinePassTolerance && braking <= line + kLinePassTolerance) {
      ref.gate = intersection_gate(ctx.intersection->areas, ctx.predictions, *ctx.frame,
                                   ref.d_t, 0.5 * ctx.ego.width + ctx.scn.inflation);
      if (ref.gate == GateDecision::kStopAtLine) {
        ref.hold_at_line = true;
        ref.line_s = std::max(0.0, line);
      }
    } else {
      ref.gate = GateDecision::kProceed;
    }
  }
  return ref;
}

}  // namespace shuttle::behavior
