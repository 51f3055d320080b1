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

#include "dense_qp.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace shuttle::oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double dense_objective(const DenseQp& qp, const VectorXd& x) {
  return 0.5 * x.dot(qp.P * x) + qp.q.dot(x) + qp.r;
}

namespace {

// Newton centering on t*f(y) - sum log(h - G y) for a convex quadratic f.
// Returns false if the iterate left the domain.
bool center(const MatrixXd& P, const VectorXd& q, const MatrixXd& G, const VectorXd& h,
            double t, VectorXd& y, const std::function<bool(const VectorXd&)>& done = {}) {
  auto phi = [&](const VectorXd& z) {
    const VectorXd slack = h - G * z;
    if (slack.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
    return t * (0.5 * z.dot(P * z) + q.dot(z)) - slack.array().log().sum();
  };
  for (int it = 0; it < 200; ++it) {
    const VectorXd slack = h - G * y;
    const VectorXd inv = slack.cwiseInverse();
    const VectorXd grad = t * (P * y + q) + G.transpose() * inv;
    const MatrixXd hess =
        t * P + G.transpose() * inv.cwiseProduct(inv).asDiagonal() * G;
    const VectorXd step = -hess.ldlt().solve(grad);
    const double decrement = -grad.dot(step);
    if (!(decrement >= 0.0) || decrement < 1e-14) return true;
    double alpha = 1.0;
    const double f0 = phi(y);
    while (alpha > 1e-16) {
      const VectorXd cand = y + alpha * step;
      if (phi(cand) <= f0 - 0.25 * alpha * decrement) break;
      alpha *= 0.5;
    }
    if (alpha <= 1e-16) return true;
    y += alpha * step;
    if (done && done(y)) return true;
  }
  return true;
}

}  // namespace

BarrierResult barrier_solve(const DenseQp& qp, double gap_tolerance) {
  BarrierResult res;
  const auto n = qp.q.size();

  // Particular solution and null-space basis of the equalities.
  VectorXd xp = VectorXd::Zero(n);
  MatrixXd z = MatrixXd::Identity(n, n);
  if (qp.A.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(qp.A);
    xp = cod.solve(qp.b);
    if ((qp.A * xp - qp.b).lpNorm<Eigen::Infinity>() > 1e-9) return res;
    Eigen::FullPivLU<MatrixXd> lu(qp.A);
    z = lu.kernel();
    if (lu.rank() == n) z.resize(n, 0);
  }
  const auto m = z.cols();

  // Reduced constraints; rows that no longer depend on y must hold outright.
  std::vector<Eigen::Index> keep;
  const MatrixXd gz = qp.G * z;
  const VectorXd hz = qp.h - qp.G * xp;
  for (Eigen::Index i = 0; i < gz.rows(); ++i) {
    const double scale = qp.G.row(i).norm();
    if (gz.row(i).norm() <= 1e-10 * std::max(1.0, scale)) {
      if (hz[i] < -1e-9 * std::max(1.0, scale)) return res;
      continue;
    }
    keep.push_back(i);
  }
  MatrixXd g(static_cast<Eigen::Index>(keep.size()), m);
  VectorXd h(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const double nrm = gz.row(keep[i]).norm();
    g.row(static_cast<Eigen::Index>(i)) = gz.row(keep[i]) / nrm;
    h[static_cast<Eigen::Index>(i)] = hz[keep[i]] / nrm;
  }
  const MatrixXd pr = z.transpose() * qp.P * z;
  const VectorXd qr = z.transpose() * (qp.P * xp + qp.q);

  VectorXd y = VectorXd::Zero(m);
  if (g.rows() > 0 && (g * y - h).maxCoeff() >= -1e-12) {
    // Phase one: minimize sigma subject to G y - sigma <= h.
    MatrixXd g1(g.rows(), m + 1);
    g1 << g, -VectorXd::Ones(g.rows());
    VectorXd w(m + 1);
    w << y, (g * y - h).maxCoeff() + 1.0;
    VectorXd c1 = VectorXd::Zero(m + 1);
    c1[m] = 1.0;
    const MatrixXd p1 = MatrixXd::Zero(m + 1, m + 1);
    // Keep sigma from running off when the feasible set is wide.
    MatrixXd g1b(g1.rows() + 1, m + 1);
    g1b << g1, c1.transpose() * -1.0;
    VectorXd h1b(h.size() + 1);
    h1b << h, 1.0;
    auto inside = [&](const VectorXd& v) { return v[m] < -1e-7; };
    for (double t = 1.0; t < 1e12 && !inside(w); t *= 10.0) {
      center(p1, c1, g1b, h1b, t, w, inside);
    }
    if (!inside(w)) return res;
    y = w.head(m);
  }

  const double rows = std::max<double>(1.0, static_cast<double>(g.rows()));
  double t = 1.0;
  if (g.rows() == 0) {
    y = pr.ldlt().solve(-qr);
  } else {
    for (; rows / t > gap_tolerance; t *= 20.0) center(pr, qr, g, h, t, y);
  }

  res.feasible = true;
  res.x = xp + z * y;
  res.objective = dense_objective(qp, res.x);
  res.gap = g.rows() == 0 ? 0.0 : rows / t;
  return res;
}

KinematicState integrate_jerks(double s0, double v0, double a0, double dt,
                               const VectorXd& jerks, double t) {
  KinematicState st{s0, v0, a0};
  double t_now = 0.0;
  for (Eigen::Index i = 0; i < jerks.size(); ++i) {
    const double tau = std::min(dt, t - t_now);
    if (tau <= 0.0) break;
    const double j = jerks[i];
    st.s += st.v * tau + 0.5 * st.a * tau * tau + j * tau * tau * tau / 6.0;
    st.v += st.a * tau + 0.5 * j * tau * tau;
    st.a += j * tau;
    t_now += tau;
  }
  return st;
}

namespace {

// s, v, a at time t as affine maps of the jerks, by superposition.
struct AffineState {
  KinematicState c;
  Eigen::RowVectorXd s, v, a;
};

AffineState affine_at(const SpeedQpInstance& in, Eigen::Index k, double t) {
  const VectorXd zero = VectorXd::Zero(k);
  AffineState out;
  out.c = integrate_jerks(in.s0, in.v0, in.a0, in.dt, zero, t);
  out.s.resize(k);
  out.v.resize(k);
  out.a.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    VectorXd e = zero;
    e[i] = 1.0;
    const auto st = integrate_jerks(in.s0, in.v0, in.a0, in.dt, e, t);
    out.s[i] = st.s - out.c.s;
    out.v[i] = st.v - out.c.v;
    out.a[i] = st.a - out.c.a;
  }
  return out;
}

}  // namespace

SpeedQpInstance speed_refinement_qp(const motion::CoarseProfile& coarse, double a0,
                                    const motion::StGraph& graph,
                                    const motion::LimitTrack& limits,
                                    std::optional<double> stop_s,
                                    const motion::SpeedQpParams& params) {
  SpeedQpInstance in;
  in.s0 = coarse.s.front();
  in.v0 = coarse.v.front();
  in.a0 = a0;
  in.dt = coarse.dt;
  const auto k = static_cast<Eigen::Index>(coarse.a.size());
  auto& qp = in.qp;

  // Effort: integral of squared jerk. Tracking: squared distance to the
  // coarse positions at the layer times.
  qp.P = MatrixXd::Identity(k, k) * (2.0 * in.dt);
  qp.q = VectorXd::Zero(k);
  qp.r = 0.0;
  for (Eigen::Index i = 1; i <= k; ++i) {
    const auto st = affine_at(in, k, in.dt * static_cast<double>(i));
    const double off = st.c.s - coarse.s[static_cast<std::size_t>(i)];
    qp.P += 2.0 * params.w_ref * st.s.transpose() * st.s;
    qp.q += 2.0 * params.w_ref * off * st.s.transpose();
    qp.r += params.w_ref * off * off;
  }

  in.halting = coarse.v.back() == 0.0 && stop_s.has_value() &&
               std::abs(coarse.s.back() - *stop_s) <= params.stop_capture;
  const double t_end = in.dt * static_cast<double>(k);
  if (in.halting) {
    in.stop_target = std::min(*stop_s, graph.s_end());
    const auto end = affine_at(in, k, t_end);
    qp.A.resize(2, k);
    qp.b.resize(2);
    qp.A.row(0) = end.s;
    qp.b[0] = in.stop_target - end.c.s;
    qp.A.row(1) = end.v;
    qp.b[1] = -end.c.v;
  } else {
    qp.A.resize(0, k);
    qp.b.resize(0);
  }

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  auto add = [&](const Eigen::RowVectorXd& r, double c, double bound) {
    if (!std::isfinite(bound)) return;
    rows.push_back(r);
    rhs.push_back(bound - c);
  };
  for (const auto& b : motion::collocation_bounds(graph, limits, coarse, params)) {
    const auto st = affine_at(in, k, b.t);
    add(st.a, st.c.a, params.a_max);
    add(-st.a, -st.c.a, params.a_max);
    add(st.v, st.c.v, b.v_max);
    add(-st.v, -st.c.v, 0.0);
    add(st.s, st.c.s, b.s_hi);
    add(-st.s, -st.c.s, -b.s_lo);
  }
  qp.G.resize(static_cast<Eigen::Index>(rows.size()), k);
  qp.h.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    qp.G.row(static_cast<Eigen::Index>(i)) = rows[i];
    qp.h[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  return in;
}

VectorXd segment_jerks(const motion::SpeedProfile& profile) {
  VectorXd j(static_cast<Eigen::Index>(profile.segments().size()));
  for (std::size_t i = 0; i < profile.segments().size(); ++i) {
    j[static_cast<Eigen::Index>(i)] = profile.segments()[i].jerk;
  }
  return j;
}

}  // namespace shuttle::oracle
