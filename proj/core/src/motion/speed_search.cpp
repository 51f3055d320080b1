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

#include "shuttle/motion/speed_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "absl/status/status.h"

namespace shuttle::motion {

namespace {

// Lattice state after k layers. A stopped state remembers the layer it came
// to rest on and the moving state it braked from.
struct State {
  int m{0};
  long q{0};
  int stop_layer{-1};
  auto operator<=>(const State&) const = default;
};

struct Node {
  double accel_cost{0.0};
  State parent;
  int level{0};
};

struct Lattice {
  const StGraph& graph;
  const LimitTrack& limits;
  double s0, v0, dt, dv, dq;
  const SearchParams& params;

  double moving_s(std::size_t k, long q) const {
    return s0 + v0 * dt * static_cast<double>(k) + dq * static_cast<double>(q);
  }
  double speed(const State& st) const {
    return st.stop_layer >= 0 ? 0.0 : v0 + dv * st.m;
  }
  double position(const State& st, std::size_t k) const {
    if (st.stop_layer < 0) return moving_s(k, st.q);
    const auto kb = static_cast<std::size_t>(st.stop_layer - 1);
    return moving_s(kb, st.q) + 0.5 * (v0 + dv * st.m) * dt;
  }

  struct Step {
    State next;
    double s_prev, s, v, a;
  };

  // Transition from `st` (at layer k - 1) with level j into layer k.
  std::optional<Step> step(const State& st, std::size_t k, int j) const {
    Step out;
    out.s_prev = position(st, k - 1);
    if (st.stop_layer >= 0) {
      if (j != 0) return std::nullopt;
      out.next = st;
      out.s = out.s_prev;
      out.v = 0.0;
      out.a = 0.0;
    } else if (j == kBrakeToRest) {
      const double v_prev = speed(st);
      const double decel = v_prev / dt;
      if (!(v_prev > 0.0) ||
          decel > params.accel_step * params.accel_levels + 1e-12) {
        return std::nullopt;
      }
      out.next = State{st.m, st.q, static_cast<int>(k)};
      out.s = out.s_prev + 0.5 * v_prev * dt;
      out.v = 0.0;
      out.a = -decel;
    } else {
      if (j < -params.accel_levels || j > params.accel_levels) return std::nullopt;
      out.next = State{st.m + j, st.q + 2L * st.m + j, -1};
      out.s = position(out.next, k);
      out.v = speed(out.next);
      out.a = params.accel_step * j;
    }
    if (out.v < 0.0 || out.s > graph.s_end() + 1e-9) return std::nullopt;
    if (out.v > limits.window_max(out.s, params.limit_margin)) return std::nullopt;
    if (!graph.free(k - 1, out.s_prev, out.s)) return std::nullopt;
    return out;
  }
};

}  // namespace

double LimitTrack::at(double s) const {
  if (limits.empty()) return 0.0;
  const double x = std::max(0.0, s) / ds;
  const auto i = std::min(static_cast<std::size_t>(std::floor(x)), limits.size() - 1);
  const auto j = std::min(i + 1, limits.size() - 1);
  if (j < ramp.size() && (ramp[i] || ramp[j])) return std::numeric_limits<double>::infinity();
  return std::min(limits[i], limits[j]);
}

double LimitTrack::window_max(double s, double margin) const {
  if (limits.empty()) return 0.0;
  const auto last = static_cast<long>(limits.size()) - 1;
  const long lo = std::clamp(static_cast<long>(std::floor((s - margin) / ds)), 0L, last);
  const long hi = std::clamp(static_cast<long>(std::ceil((s + margin) / ds)), 0L, last);
  double best = 0.0;
  for (long i = lo; i <= hi; ++i) best = std::max(best, limits[static_cast<std::size_t>(i)]);
  return best;
}

double CoarseProfile::s_at(double t) const {
  if (s.empty()) return 0.0;
  const auto k = std::min(static_cast<std::size_t>(std::max(0.0, t) / dt), a.size());
  if (k >= a.size()) return s.back() + v.back() * (t - dt * static_cast<double>(a.size()));
  const double tau = t - dt * static_cast<double>(k);
  return s[k] + v[k] * tau + 0.5 * a[k] * tau * tau;
}

double CoarseProfile::v_at(double t) const {
  if (v.empty()) return 0.0;
  const auto k = std::min(static_cast<std::size_t>(std::max(0.0, t) / dt), a.size());
  if (k >= a.size()) return v.back();
  return v[k] + a[k] * (t - dt * static_cast<double>(k));
}

std::optional<double> sequence_cost(const StGraph& graph, const LimitTrack& limits,
                                    double s0, double v0, const std::vector<int>& levels,
                                    const SearchParams& params, CoarseProfile* profile) {
  const double dt = graph.params().dt;
  const Lattice lat{graph, limits, s0, v0, dt, params.accel_step * dt,
                    0.5 * params.accel_step * dt * dt, params};
  State st;
  double accel_cost = 0.0;
  CoarseProfile out;
  out.dt = dt;
  out.s.push_back(s0);
  out.v.push_back(v0);
  for (std::size_t k = 1; k <= levels.size(); ++k) {
    const auto next = lat.step(st, k, levels[k - 1]);
    if (!next) return std::nullopt;
    st = next->next;
    accel_cost += next->a * next->a;
    out.a.push_back(next->a);
    out.s.push_back(next->s);
    out.v.push_back(next->v);
  }
  out.cost = params.w_progress * (graph.s_end() - out.s.back()) + params.w_accel * accel_cost;
  if (profile != nullptr) *profile = out;
  return out.cost;
}

absl::StatusOr<CoarseProfile> search_speed(const StGraph& graph, const LimitTrack& limits,
                                           double s0, double v0, const SearchParams& params) {
  const double dt = graph.params().dt;
  const Lattice lat{graph, limits, s0, v0, dt, params.accel_step * dt,
                    0.5 * params.accel_step * dt * dt, params};
  const std::size_t layers = graph.columns();
  std::vector<int> choices;
  for (int j = -params.accel_levels; j <= params.accel_levels; ++j) choices.push_back(j);
  choices.push_back(kBrakeToRest);

  std::vector<std::map<State, Node>> dp(layers + 1);
  dp[0][State{}] = Node{};
  for (std::size_t k = 1; k <= layers; ++k) {
    for (const auto& [st, node] : dp[k - 1]) {
      for (const int j : choices) {
        const auto next = lat.step(st, k, j);
        if (!next) continue;
        const double cost = node.accel_cost + next->a * next->a;
        auto [it, inserted] = dp[k].try_emplace(next->next, Node{cost, st, j});
        if (!inserted && cost < it->second.accel_cost) it->second = Node{cost, st, j};
      }
    }
    if (dp[k].empty()) {
      return absl::ResourceExhaustedError("no admissible speed profile over the horizon");
    }
  }

  const State* best = nullptr;
  double best_cost = 0.0;
  for (const auto& [st, node] : dp[layers]) {
    const double cost = params.w_progress * (graph.s_end() - lat.position(st, layers)) +
                        params.w_accel * node.accel_cost;
    if (best == nullptr || cost < best_cost) {
      best = &st;
      best_cost = cost;
    }
  }

  std::vector<int> levels(layers);
  State st = *best;
  for (std::size_t k = layers; k >= 1; --k) {
    const Node& node = dp[k].at(st);
    levels[k - 1] = node.level;
    st = node.parent;
  }
  CoarseProfile out;
  sequence_cost(graph, limits, s0, v0, levels, params, &out);
  out.cost = best_cost;
  return out;
}

}  // namespace shuttle::motion
