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

#include "shuttle/motion/speed_profile.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "shuttle/qp.hpp"

namespace shuttle::motion {

namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

// s, v and a at time t as affine functions of the segment jerks.
struct Affine {
  double s_c{0.0}, v_c{0.0}, a_c{0.0};
  RowVectorXd s_r, v_r, a_r;
};

class JerkSpline {
 public:
  JerkSpline(double s0, double v0, double a0, double h, std::size_t k)
      : h_(h), k_(k) {
    Affine st{s0, v0, a0, RowVectorXd::Zero(static_cast<Eigen::Index>(k)),
              RowVectorXd::Zero(static_cast<Eigen::Index>(k)),
              RowVectorXd::Zero(static_cast<Eigen::Index>(k))};
    knots_.push_back(st);
    for (std::size_t i = 0; i < k; ++i) knots_.push_back(advance(knots_.back(), i, h));
  }

  Affine at(double t) const {
    const auto i = std::min(static_cast<std::size_t>(std::floor(t / h_ + 1e-9)), k_ - 1);
    return advance(knots_[i], i, t - h_ * static_cast<double>(i));
  }

 private:
  static Affine advance(const Affine& st, std::size_t seg, double tau) {
    Affine out = st;
    const auto j = static_cast<Eigen::Index>(seg);
    out.s_c = st.s_c + st.v_c * tau + 0.5 * st.a_c * tau * tau;
    out.v_c = st.v_c + st.a_c * tau;
    out.s_r = st.s_r + st.v_r * tau + 0.5 * st.a_r * tau * tau;
    out.v_r = st.v_r + st.a_r * tau;
    out.s_r[j] += tau * tau * tau / 6.0;
    out.v_r[j] += 0.5 * tau * tau;
    out.a_r[j] += tau;
    return out;
  }

  double h_;
  std::size_t k_;
  std::vector<Affine> knots_;
};

}  // namespace

const CubicSegment* SpeedProfile::find(double t, double& tau) const {
  if (segments_.empty()) return nullptr;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const CubicSegment& s) { return x < s.t0; });
  const CubicSegment* seg = it == segments_.begin() ? &segments_.front() : &*(it - 1);
  tau = std::clamp(t - seg->t0, 0.0, seg->duration);
  return seg;
}

double SpeedProfile::duration() const {
  return segments_.empty() ? 0.0 : segments_.back().t0 + segments_.back().duration;
}

double SpeedProfile::s_at(double t) const {
  double tau = 0.0;
  const auto* g = find(t, tau);
  if (g == nullptr) return 0.0;
  const double s = g->s0 + g->v0 * tau + 0.5 * g->a0 * tau * tau + g->jerk * tau * tau * tau / 6.0;
  const double extra = t - g->t0 - tau;
  return extra > 0.0 ? s + v_at(t) * extra : s;
}

double SpeedProfile::v_at(double t) const {
  double tau = 0.0;
  const auto* g = find(t, tau);
  if (g == nullptr) return 0.0;
  return g->v0 + g->a0 * tau + 0.5 * g->jerk * tau * tau;
}

double SpeedProfile::a_at(double t) const {
  double tau = 0.0;
  const auto* g = find(t, tau);
  if (g == nullptr || t > duration()) return 0.0;
  return g->a0 + g->jerk * tau;
}

double SpeedProfile::jerk_at(double t) const {
  double tau = 0.0;
  const auto* g = find(t, tau);
  if (g == nullptr || t > duration()) return 0.0;
  return g->jerk;
}

SpeedProfile coarse_to_profile(const CoarseProfile& coarse) {
  std::vector<CubicSegment> segs;
  for (std::size_t k = 0; k < coarse.a.size(); ++k) {
    segs.push_back({coarse.dt * static_cast<double>(k), coarse.dt, coarse.s[k], coarse.v[k],
                    coarse.a[k], 0.0});
  }
  return SpeedProfile(std::move(segs));
}

std::vector<CollocationBound> collocation_bounds(const StGraph& graph,
                                                 const LimitTrack& limits,
                                                 const CoarseProfile& coarse,
                                                 const SpeedQpParams& params) {
  std::vector<CollocationBound> out;
  const double horizon = coarse.dt * static_cast<double>(coarse.a.size());
  const auto n = static_cast<int>(std::round(horizon / params.collocation_dt));
  for (int i = 1; i <= n; ++i) {
    const double t = params.collocation_dt * i;
    const double s_hat = coarse.s_at(t);
    // The column is the one containing the interval ending at t.
    const auto [lo, hi] = graph.free_span(graph.column_of(t - 1e-9), s_hat);
    out.push_back({t, limits.at(s_hat), lo, std::min(hi, graph.s_end())});
  }
  return out;
}

SpeedRefinement refine_speed(const CoarseProfile& coarse, double a0, const StGraph& graph,
                             const LimitTrack& limits, std::optional<double> stop_s,
                             const SpeedQpParams& params) {
  SpeedRefinement result;
  result.profile = coarse_to_profile(coarse);
  const std::size_t k = coarse.a.size();
  if (k == 0) return result;
  const double h = coarse.dt;
  const auto nk = static_cast<Eigen::Index>(k);
  const JerkSpline spline(coarse.s[0], coarse.v[0], a0, h, k);

  qp::Problem pb;
  pb.H = MatrixXd::Identity(nk, nk) * (2.0 * h);
  pb.g = VectorXd::Zero(nk);
  for (std::size_t i = 1; i <= k; ++i) {
    const Affine st = spline.at(h * static_cast<double>(i));
    pb.H += 2.0 * params.w_ref * st.s_r.transpose() * st.s_r;
    pb.g += 2.0 * params.w_ref * st.s_r.transpose() * (st.s_c - coarse.s[i]);
  }

  const bool halting = coarse.v.back() == 0.0 && stop_s &&
                       std::abs(coarse.s.back() - *stop_s) <= params.stop_capture;
  if (halting) {
    const Affine end = spline.at(h * static_cast<double>(k));
    pb.A_eq.resize(2, nk);
    pb.b_eq.resize(2);
    pb.A_eq.row(0) = end.s_r;
    pb.b_eq[0] = std::min(*stop_s, graph.s_end()) - end.s_c;
    pb.A_eq.row(1) = end.v_r;
    pb.b_eq[1] = -end.v_c;
  } else {
    pb.A_eq.resize(0, nk);
    pb.b_eq.resize(0);
  }

  auto bounds = collocation_bounds(graph, limits, coarse, params);
  for (int pass = 0; pass < params.max_passes; ++pass) {
    std::vector<RowVectorXd> rows;
    std::vector<double> rhs;
    auto le = [&](const RowVectorXd& r, double c, double bound) {
      if (!std::isfinite(bound)) return;
      rows.push_back(r);
      rhs.push_back(bound - c);
    };
    const double t_end = h * static_cast<double>(k);
    for (const auto& b : bounds) {
      const Affine st = spline.at(b.t);
      le(st.a_r, st.a_c, params.a_max);
      le(-st.a_r, -st.a_c, params.a_max);
      // The end state is pinned when halting; bounding it again leaves no interior.
      if (halting && b.t > t_end - 1e-9) continue;
      le(st.v_r, st.v_c, b.v_max);
      le(-st.v_r, -st.v_c, 0.0);
      le(st.s_r, st.s_c, b.s_hi);
      le(-st.s_r, -st.s_c, -b.s_lo);
    }
    pb.C.resize(static_cast<Eigen::Index>(rows.size()), nk);
    pb.d.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      pb.C.row(static_cast<Eigen::Index>(i)) = rows[i];
      pb.d[static_cast<Eigen::Index>(i)] = rhs[i];
    }

    const auto sol = qp::solve(pb);
    result.qp_iterations += sol.iterations;
    if (!sol.converged || !sol.x.allFinite()) return result;
    if (pb.C.rows() > 0 && (pb.C * sol.x - pb.d).maxCoeff() > 1e-6) return result;

    // Limits were taken at the coarse positions; recheck where the spline went.
    bool moved = false;
    for (auto& b : bounds) {
      const Affine st = spline.at(b.t);
      const double lim = limits.at(st.s_c + st.s_r.dot(sol.x));
      if (st.v_c + st.v_r.dot(sol.x) > lim + 1e-6 && lim < b.v_max) {
        b.v_max = lim;
        moved = true;
      }
    }
    if (moved) {
      if (pass + 1 == params.max_passes) return result;
      continue;
    }

    std::vector<CubicSegment> segs;
    for (std::size_t i = 0; i < k; ++i) {
      const double t0 = h * static_cast<double>(i);
      const Affine st = spline.at(t0);
      segs.push_back({t0, h, st.s_c + st.s_r.dot(sol.x), st.v_c + st.v_r.dot(sol.x),
                      st.a_c + st.a_r.dot(sol.x), sol.x[static_cast<Eigen::Index>(i)]});
    }
    result.profile = SpeedProfile(std::move(segs));
    result.refined = true;
    result.terminal_stop = halting;
    return result;
  }
  return result;
}

}  // namespace shuttle::motion
