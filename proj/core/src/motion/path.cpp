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

#include "shuttle/motion/path.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shuttle::motion {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty()) return 0.0;
  if (x <= xs.front()) return ys.front() + (x - xs.front());
  if (x >= xs.back()) return ys.back() + (x - xs.back());
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + w * (ys[i + 1] - ys[i]);
}

class PathFactors {
 public:
  PathFactors(const PathRequest& req, const PathParams& params)
      : req_(req), params_(params), frame_(*req.frame) {
    for (const auto& o : req.obstacles) {
      boxes_.push_back(geometry::bounding_box(o));
      geometry::Vec2 c;
      for (const auto& v : o) c += v;
      c = c * (1.0 / static_cast<double>(o.size()));
      obstacle_d_.push_back(frame_.curve.project(c).d);
    }
  }

  std::size_t size() const { return frame_.size(); }

  double clearance(std::size_t k, double e, std::size_t* nearest = nullptr) const {
    const auto poly =
        frenet::ego_box_at(frame_.curve, frame_.curve[k].s, e, req_.ego).corners();
    const auto box = geometry::bounding_box(poly);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < req_.obstacles.size(); ++i) {
      if (box.gap(boxes_[i]) - req_.inflation > params_.buffer + 1.0) continue;
      const double c = geometry::polygon_distance(poly, req_.obstacles[i]) - req_.inflation;
      if (c < best) {
        best = c;
        if (nearest != nullptr) *nearest = i;
      }
    }
    return best;
  }

  // Residuals and (optionally) their Jacobian at offsets e.
  void evaluate(const VectorXd& e, VectorXd& r, MatrixXd* jac) const {
    const std::size_t n = size();
    const double ds = frame_.ds();
    const double inv_ds2 = 1.0 / (ds * ds);
    std::vector<double> rows;
    std::vector<std::vector<std::pair<std::size_t, double>>> grads;
    auto add = [&](double value, std::vector<std::pair<std::size_t, double>> g) {
      rows.push_back(value);
      grads.push_back(std::move(g));
    };

    const double sp = std::sqrt(params_.w_prior);
    for (std::size_t k = 0; k < n; ++k) add(sp * (e[k] - req_.target_offset), {{k, sp}});

    const double si = std::sqrt(params_.w_init);
    add(si * (e[0] - req_.start_offset), {{0, si}});
    add(si * ((e[1] - e[0]) / ds - req_.start_slope), {{0, -si / ds}, {1, si / ds}});

    const double ss = std::sqrt(params_.w_smooth);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      add(ss * (e[k + 1] - 2.0 * e[k] + e[k - 1]) * inv_ds2,
          {{k - 1, ss * inv_ds2}, {k, -2.0 * ss * inv_ds2}, {k + 1, ss * inv_ds2}});
    }

    const double sc = std::sqrt(params_.w_curvature);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double kr = frame_.curve[k].kappa;
      const double denom = std::max(0.2, 1.0 - kr * e[k]);
      const double kappa = kr / denom + (e[k + 1] - 2.0 * e[k] + e[k - 1]) * inv_ds2;
      double cap = params_.kappa_max;
      if (!req_.curvature_caps.empty()) cap = std::min(cap, req_.curvature_caps[k]);
      const double excess = std::abs(kappa) - cap;
      if (excess > 0.0) {
        const double sgn = kappa > 0.0 ? 1.0 : -1.0;
        const double dk_de = kr * kr / (denom * denom);
        add(sc * excess, {{k - 1, sc * sgn * inv_ds2},
                          {k, sc * sgn * (dk_de - 2.0 * inv_ds2)},
                          {k + 1, sc * sgn * inv_ds2}});
      } else {
        add(0.0, {});
      }
    }

    const double so = std::sqrt(params_.w_obstacle);
    if (!req_.obstacles.empty()) {
      for (std::size_t k = 0; k < n; ++k) {
        if (frame_.curve[k].s > req_.obstacle_horizon) break;
        std::size_t nearest = 0;
        const double c = clearance(k, e[k], &nearest);
        const double deficit = params_.buffer - c;
        if (!(deficit > 0.0)) {
          add(0.0, {});
          continue;
        }
        double dc = 0.0;
        if (jac != nullptr) {
          constexpr double kStep = 1e-4;
          dc = (clearance(k, e[k] + kStep) - clearance(k, e[k] - kStep)) / (2.0 * kStep);
          if (dc == 0.0) dc = e[k] >= obstacle_d_[nearest] ? 1.0 : -1.0;
        }
        add(so * deficit, {{k, -so * dc}});
      }
    }

    r = Eigen::Map<const VectorXd>(rows.data(), static_cast<Eigen::Index>(rows.size()));
    if (jac != nullptr) {
      jac->setZero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < grads.size(); ++i) {
        for (const auto& [col, v] : grads[i]) {
          (*jac)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) += v;
        }
      }
    }
  }

 private:
  const PathRequest& req_;
  const PathParams& params_;
  const frenet::FrenetFrame& frame_;
  std::vector<geometry::Aabb> boxes_;
  std::vector<double> obstacle_d_;
};

}  // namespace

double Path::frame_s_at(double path_s) const {
  std::vector<double> ps(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) ps[i] = curve[i].s;
  return interpolate(ps, frame_s, path_s);
}

double Path::path_s_at(double fs) const {
  std::vector<double> ps(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) ps[i] = curve[i].s;
  return interpolate(frame_s, ps, fs);
}

double path_objective(const PathRequest& request, const PathParams& params,
                      const std::vector<double>& offsets) {
  const PathFactors factors(request, params);
  VectorXd r;
  factors.evaluate(Eigen::Map<const VectorXd>(offsets.data(),
                                              static_cast<Eigen::Index>(offsets.size())),
                   r, nullptr);
  return r.squaredNorm();
}

Path generate_path(const PathRequest& request, const PathParams& params) {
  if (request.frame == nullptr || request.frame->size() < 3) {
    throw std::invalid_argument("path generation needs a frame with 3+ samples");
  }
  const auto& frame = *request.frame;
  const PathFactors factors(request, params);
  const auto n = static_cast<Eigen::Index>(frame.size());

  VectorXd e = VectorXd::Constant(n, request.target_offset);
  e[0] = request.start_offset;
  VectorXd r;
  MatrixXd jac;
  factors.evaluate(e, r, &jac);
  double cost = r.squaredNorm();

  Path path;
  path.objective_history.push_back(cost);
  double damping = 1e-3;
  int it = 0;
  for (; it < params.max_iterations; ++it) {
    const MatrixXd jtj = jac.transpose() * jac;
    const VectorXd grad = jac.transpose() * r;
    MatrixXd lhs = jtj;
    lhs.diagonal().array() += damping * (1.0 + jtj.diagonal().array());
    const VectorXd step = lhs.ldlt().solve(-grad);
    const VectorXd cand = e + step;
    VectorXd r_new;
    factors.evaluate(cand, r_new, nullptr);
    const double cost_new = r_new.squaredNorm();
    if (cost_new < cost) {
      const double decrease = cost - cost_new;
      e = cand;
      cost = cost_new;
      path.objective_history.push_back(cost);
      damping = std::max(1e-9, damping / 3.0);
      factors.evaluate(e, r, &jac);
      if (decrease < params.tolerance) {
        path.converged = true;
        ++it;
        break;
      }
    } else {
      damping *= 4.0;
      if (step.lpNorm<Eigen::Infinity>() < 1e-12 || grad.lpNorm<Eigen::Infinity>() < 1e-12) {
        path.converged = true;
        ++it;
        break;
      }
    }
  }
  path.iterations = it;

  path.support_offsets.assign(e.data(), e.data() + e.size());
  std::vector<geometry::Vec2> pts;
  std::vector<double> cum;
  pts.reserve(frame.size());
  for (std::size_t k = 0; k < frame.size(); ++k) {
    pts.push_back(frame.point_at(frame.curve[k].s, e[static_cast<Eigen::Index>(k)]));
    cum.push_back(k == 0 ? 0.0 : cum.back() + geometry::distance(pts[k - 1], pts[k]));
  }
  path.curve = geometry::Curve::from_polyline(pts, frame.ds());
  std::vector<double> fs(frame.size());
  for (std::size_t k = 0; k < frame.size(); ++k) fs[k] = frame.curve[k].s;
  path.frame_s.reserve(path.curve.size());
  for (const auto& smp : path.curve.samples()) {
    path.frame_s.push_back(interpolate(cum, fs, smp.s));
  }
  return path;
}

}  // namespace shuttle::motion
