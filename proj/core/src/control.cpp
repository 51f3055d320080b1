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

#include "shuttle/control.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "shuttle/geometry.hpp"
#include "shuttle/qp.hpp"

namespace shuttle::control {

namespace {

using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector4d;
using Eigen::VectorXd;
using Mat42 = Eigen::Matrix<double, 4, 2>;

constexpr double kFailureBrake = -1.0;

Vector4d to_vec(const VehicleState& s) { return {s.x, s.y, s.theta, s.v}; }
VehicleState from_vec(const Vector4d& v) { return {v[0], v[1], v[2], v[3], 0.0}; }

Vector4d deriv(const Vector4d& s, double a, double delta, const VehicleParams& vp) {
  return {s[3] * std::cos(s[2]), s[3] * std::sin(s[2]), s[3] * std::tan(delta) / vp.wheelbase,
          a};
}

std::vector<VehicleState> rollout(const VehicleState& x0, const std::vector<ControlCommand>& u,
                                  double dt, const VehicleParams& vp) {
  std::vector<VehicleState> xs{x0};
  for (const auto& c : u) xs.push_back(bicycle_step(xs.back(), c, dt, vp));
  return xs;
}

// Tracking error in the reference's heading frame: lateral, longitudinal,
// heading, speed. Linear in the state for fixed reference heading.
Eigen::Matrix4d error_map(double theta_r) {
  Matrix4d m = Matrix4d::Zero();
  m(0, 0) = -std::sin(theta_r);
  m(0, 1) = std::cos(theta_r);
  m(1, 0) = std::cos(theta_r);
  m(1, 1) = std::sin(theta_r);
  m(2, 2) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

Vector4d state_error(const VehicleState& x, const VehicleState& r) {
  Vector4d d{x.x - r.x, x.y - r.y, geometry::normalize_angle(x.theta - r.theta), x.v - r.v};
  return error_map(r.theta) * d;
}

}  // namespace

VehicleState bicycle_step(const VehicleState& s, const ControlCommand& u, double dt,
                          const VehicleParams& vp) {
  const Vector4d x = to_vec(s);
  const Vector4d k1 = deriv(x, u.accel, u.steer, vp);
  const Vector4d k2 = deriv(x + 0.5 * dt * k1, u.accel, u.steer, vp);
  const Vector4d k3 = deriv(x + 0.5 * dt * k2, u.accel, u.steer, vp);
  const Vector4d k4 = deriv(x + dt * k3, u.accel, u.steer, vp);
  VehicleState out = from_vec(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  out.v = std::max(0.0, out.v);
  out.steer = u.steer;
  return out;
}

std::vector<ReferencePoint> reference_from(const motion::Trajectory& traj, double t_offset,
                                           const MpcParams& p, const VehicleParams& vp) {
  std::vector<ReferencePoint> out;
  const auto& pts = traj.points;
  for (int k = 1; k <= p.horizon; ++k) {
    const double t = t_offset + p.dt * k;
    ReferencePoint r;
    if (pts.empty()) {
      out.push_back(r);
      continue;
    }
    auto it = std::upper_bound(pts.begin(), pts.end(), t,
                               [](double x, const motion::TrajectoryPoint& q) { return x < q.t; });
    const motion::TrajectoryPoint* a = it == pts.begin() ? &pts.front() : &*(it - 1);
    const motion::TrajectoryPoint* b = it == pts.end() ? a : &*it;
    const double w = b->t > a->t ? std::clamp((t - a->t) / (b->t - a->t), 0.0, 1.0) : 0.0;
    r.state.x = a->x + w * (b->x - a->x);
    r.state.y = a->y + w * (b->y - a->y);
    r.state.theta = a->heading + w * geometry::normalize_angle(b->heading - a->heading);
    r.state.v = a->v + w * (b->v - a->v);
    const double kappa = a->kappa + w * (b->kappa - a->kappa);
    r.input.accel = a->a + w * (b->a - a->a);
    r.input.steer = std::clamp(std::atan(vp.wheelbase * kappa), -vp.max_steer, vp.max_steer);
    out.push_back(r);
  }
  return out;
}

double horizon_cost(const VehicleState& x0, const std::vector<ControlCommand>& inputs,
                    const std::vector<ReferencePoint>& ref, const ControlCommand& previous,
                    const MpcParams& p, const VehicleParams& vp) {
  const auto xs = rollout(x0, inputs, p.dt, vp);
  const Vector4d q{p.q_lateral, p.q_longitudinal, p.q_heading, p.q_speed};
  double cost = 0.0;
  ControlCommand prev = previous;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Vector4d e = state_error(xs[k + 1], ref[k].state);
    cost += e.cwiseProduct(e).dot(q);
    const double da = inputs[k].accel - ref[k].input.accel;
    const double dd = inputs[k].steer - ref[k].input.steer;
    cost += p.r_accel * da * da + p.r_steer * dd * dd;
    const double ra = inputs[k].accel - prev.accel;
    const double rd = inputs[k].steer - prev.steer;
    cost += p.r_accel_rate * ra * ra + p.r_steer_rate * rd * rd;
    prev = inputs[k];
  }
  return cost;
}

MpcResult mpc_track(const VehicleState& x0, const std::vector<ReferencePoint>& ref,
                    const ControlCommand& previous, bool emergency, const MpcParams& p,
                    const VehicleParams& vp) {
  const int n = std::min<int>(p.horizon, static_cast<int>(ref.size()));
  MpcResult res;
  if (n == 0) {
    res.command = {kFailureBrake, previous.steer, true};
    return res;
  }
  const auto nu = static_cast<Eigen::Index>(2 * n);
  const double jerk_step = (emergency ? p.emergency_jerk : p.max_jerk) * p.dt;

  // Nominal inputs: the reference inputs, rate-limited from the previous command.
  std::vector<ControlCommand> u(static_cast<std::size_t>(n));
  ControlCommand last = previous;
  for (int k = 0; k < n; ++k) {
    auto& c = u[static_cast<std::size_t>(k)];
    const auto& r = ref[static_cast<std::size_t>(k)].input;
    c.accel = std::clamp(r.accel, last.accel - jerk_step, last.accel + jerk_step);
    c.accel = std::clamp(c.accel, -vp.max_accel, vp.max_accel);
    c.steer = std::clamp(r.steer, last.steer - p.max_steer_rate, last.steer + p.max_steer_rate);
    c.steer = std::clamp(c.steer, -vp.max_steer, vp.max_steer);
    last = c;
  }

  const Vector4d qw{p.q_lateral, p.q_longitudinal, p.q_heading, p.q_speed};
  bool solved = false;
  for (int pass = 0; pass < p.linearizations; ++pass) {
    const auto xs = rollout(x0, u, p.dt, vp);
    // Sensitivities of each predicted state to each input deviation.
    std::vector<Matrix4d> a_k(static_cast<std::size_t>(n));
    std::vector<Mat42> b_k(static_cast<std::size_t>(n));
    constexpr double h = 1e-6;
    for (int k = 0; k < n; ++k) {
      const auto& xk = xs[static_cast<std::size_t>(k)];
      const auto& uk = u[static_cast<std::size_t>(k)];
      for (int i = 0; i < 4; ++i) {
        Vector4d dp = to_vec(xk), dm = to_vec(xk);
        dp[i] += h;
        dm[i] -= h;
        a_k[static_cast<std::size_t>(k)].col(i) =
            (to_vec(bicycle_step(from_vec(dp), uk, p.dt, vp)) -
             to_vec(bicycle_step(from_vec(dm), uk, p.dt, vp))) / (2.0 * h);
      }
      for (int i = 0; i < 2; ++i) {
        ControlCommand up = uk, um = uk;
        (i == 0 ? up.accel : up.steer) += h;
        (i == 0 ? um.accel : um.steer) -= h;
        b_k[static_cast<std::size_t>(k)].col(i) =
            (to_vec(bicycle_step(xk, up, p.dt, vp)) - to_vec(bicycle_step(xk, um, p.dt, vp))) /
            (2.0 * h);
      }
    }
    // G[k] maps input deviations to the deviation of state k+1.
    std::vector<MatrixXd> g(static_cast<std::size_t>(n), MatrixXd::Zero(4, nu));
    for (int k = 0; k < n; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      if (k > 0) g[ks] = a_k[ks] * g[ks - 1];
      g[ks].block(0, 2 * k, 4, 2) += b_k[ks];
    }

    VectorXd u0(nu);
    for (int k = 0; k < n; ++k) {
      u0[2 * k] = u[static_cast<std::size_t>(k)].accel;
      u0[2 * k + 1] = u[static_cast<std::size_t>(k)].steer;
    }

    qp::Problem pb;
    pb.H = MatrixXd::Zero(nu, nu);
    pb.g = VectorXd::Zero(nu);
    // Work in absolute inputs U: deviation = U - u0.
    for (int k = 0; k < n; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const Matrix4d em = error_map(ref[ks].state.theta);
      const Vector4d e0 = state_error(xs[ks + 1], ref[ks].state);
      const MatrixXd eg = em * g[ks];
      const MatrixXd w = qw.asDiagonal();
      pb.H += 2.0 * eg.transpose() * w * eg;
      pb.g += 2.0 * eg.transpose() * w * (e0 - eg * u0);
      pb.H(2 * k, 2 * k) += 2.0 * p.r_accel;
      pb.H(2 * k + 1, 2 * k + 1) += 2.0 * p.r_steer;
      pb.g[2 * k] -= 2.0 * p.r_accel * ref[ks].input.accel;
      pb.g[2 * k + 1] -= 2.0 * p.r_steer * ref[ks].input.steer;
      for (int c = 0; c < 2; ++c) {
        const double r = c == 0 ? p.r_accel_rate : p.r_steer_rate;
        const Eigen::Index i = 2 * k + c;
        pb.H(i, i) += 2.0 * r;
        if (k > 0) {
          pb.H(i - 2, i - 2) += 2.0 * r;
          pb.H(i, i - 2) -= 2.0 * r;
          pb.H(i - 2, i) -= 2.0 * r;
        } else {
          pb.g[i] -= 2.0 * r * (c == 0 ? previous.accel : previous.steer);
        }
      }
    }
    pb.A_eq.resize(0, nu);
    pb.b_eq.resize(0);

    std::vector<std::pair<Eigen::RowVectorXd, double>> rows;
    auto bound = [&](Eigen::Index i, Eigen::Index prev_i, double prev_value, double limit) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nu);
      r[i] = 1.0;
      double shift = 0.0;
      if (prev_i >= 0) {
        r[prev_i] = -1.0;
      } else {
        shift = prev_value;
      }
      rows.emplace_back(r, limit + shift);
      rows.emplace_back(-r, limit - shift);
    };
    for (int k = 0; k < n; ++k) {
      bound(2 * k, -1, 0.0, vp.max_accel);
      bound(2 * k + 1, -1, 0.0, vp.max_steer);
      bound(2 * k, k > 0 ? 2 * k - 2 : -1, previous.accel, jerk_step);
      bound(2 * k + 1, k > 0 ? 2 * k - 1 : -1, previous.steer, p.max_steer_rate);
    }
    pb.C.resize(static_cast<Eigen::Index>(rows.size()), nu);
    pb.d.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      pb.C.row(static_cast<Eigen::Index>(i)) = rows[i].first;
      pb.d[static_cast<Eigen::Index>(i)] = rows[i].second;
    }

    const auto sol = qp::solve(pb);
    if (!sol.converged || !sol.x.allFinite()) {
      solved = false;
      break;
    }
    solved = true;
    for (int k = 0; k < n; ++k) {
      u[static_cast<std::size_t>(k)] = {sol.x[2 * k], sol.x[2 * k + 1], false};
    }
  }

  if (!solved) {
    res.command = {kFailureBrake, previous.steer, true};
    return res;
  }
  res.inputs = u;
  res.predicted = rollout(x0, u, p.dt, vp);
  res.cost = horizon_cost(x0, u, ref, previous, p, vp);
  res.command = u.front();
  res.command.accel = std::max(res.command.accel, -p.creep_gain * std::max(0.0, x0.v));
  res.command.accel = std::clamp(res.command.accel, -vp.max_accel, vp.max_accel);
  res.command.steer = std::clamp(res.command.steer, -vp.max_steer, vp.max_steer);
  res.command.steer = std::clamp(res.command.steer, previous.steer - p.max_steer_rate,
                                 previous.steer + p.max_steer_rate);
  return res;
}

}  // namespace shuttle::control
