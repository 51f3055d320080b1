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

#include "behavior_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shuttle/frenet.hpp"

namespace shuttle::oracle {

namespace {

std::vector<double> offsets(const behavior::BehaviorContext& ctx) {
  const double h = ctx.cfg.candidate_spacing;
  std::set<long> ticks;
  for (long k = 0; static_cast<double>(k) * h <= ctx.scn.band + 1e-9; ++k) {
    ticks.insert(k);
    ticks.insert(-k);
  }
  ticks.insert(std::lround(ctx.d0 / h));
  std::vector<double> out;
  for (long k : ticks) {
    const double d = static_cast<double>(k) * h;
    if (!ctx.scn.lane_change_allowed &&
        std::abs(d - ctx.d0) > ctx.cfg.lane_change_threshold + 1e-9) {
      continue;
    }
    out.push_back(d);
  }
  return out;
}

double clearance_at(const behavior::BehaviorContext& ctx, double s, double d) {
  const auto box = frenet::ego_box_at(ctx.frame->curve, s, d, ctx.ego).corners();
  double c = 5.0;
  for (const auto& o : ctx.static_obstacles) {
    c = std::min(c, std::max(0.0, geometry::polygon_distance(box, o) - ctx.scn.inflation));
  }
  return c;
}

bool band_hit(const behavior::BehaviorContext& ctx, double d) {
  const auto& curve = ctx.frame->curve;
  const double hw = 0.5 * ctx.ego.width + ctx.scn.inflation;
  std::vector<geometry::Polygon> quads;
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    if (curve[k].s >= ctx.frame->s_max) break;
    quads.push_back(curve.band_quad(k, d, hw));
  }
  for (const auto& pred : ctx.predictions) {
    for (std::size_t k = 0; k < pred.positions.size(); ++k) {
      if (pred.time_at(k) > pred.horizon + 1e-9) break;
      const auto fp = pred.footprint_at(k).corners();
      for (const auto& q : quads) {
        if (geometry::intersects(q, fp)) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<OracleCandidate> enumerate_offsets(const behavior::BehaviorContext& ctx) {
  const auto& frame = *ctx.frame;
  const auto& w = ctx.cfg;
  std::vector<OracleCandidate> out;
  for (double d : offsets(ctx)) {
    std::vector<double> s_samples, c_samples;
    for (const auto& smp : frame.curve.samples()) {
      s_samples.push_back(smp.s);
      c_samples.push_back(clearance_at(ctx, smp.s, d));
    }
    double s_m = frame.s_max;
    for (std::size_t i = 0; i < c_samples.size(); ++i) {
      if (c_samples[i] <= 0.0) {
        s_m = s_samples[i];
        break;
      }
    }
    double sum = 0.0, c_min = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < c_samples.size() && s_samples[i] < s_m; ++i) {
      sum += c_samples[i];
      c_min = n == 0 ? c_samples[i] : std::min(c_min, c_samples[i]);
      ++n;
    }
    const double c_avg = n == 0 ? 0.0 : sum / static_cast<double>(n);

    const double j_s = w.w_s * (1.0 - s_m / frame.s_max);
    const double j_d = w.w_d1 * std::abs(d - ctx.d0) + w.w_d2 * std::abs(d);
    const double j_o = c_min <= 0.0 ? w.dynamic_penalty
                                    : w.w_o1 / std::max(c_avg, w.clearance_floor) +
                                          w.w_o2 / std::max(c_min, w.clearance_floor);
    const double j_dyn =
        ctx.scn.use_predictions && band_hit(ctx, d) ? w.dynamic_penalty : 0.0;
    out.push_back({d, j_s + j_d + j_o + j_dyn, s_m <= 0.0});
  }
  return out;
}

OracleCandidate brute_force_argmin(const behavior::BehaviorContext& ctx) {
  const auto all = enumerate_offsets(ctx);
  OracleCandidate best = all.front();
  for (const auto& c : all) {
    const bool wins = c.j_total < best.j_total ||
                      (c.j_total == best.j_total &&
                       (std::abs(c.d) < std::abs(best.d) ||
                        (std::abs(c.d) == std::abs(best.d) && c.d < best.d)));
    if (wins) best = c;
  }
  return best;
}

}  // namespace shuttle::oracle
