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

#include "shuttle/qp.hpp"

#include <algorithm>
#include <cmath>

namespace shuttle::qp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double max_step(const VectorXd& v, const VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

double objective(const Problem& problem, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(problem.H * x) + problem.g.dot(x);
}

Result solve(const Problem& problem, const Options& options) {
  // Rows are scaled to unit norm; the solution is unchanged.
  Problem pb = problem;
  for (Eigen::Index i = 0; i < pb.C.rows(); ++i) {
    const double norm = pb.C.row(i).norm();
    if (norm > 0.0) {
      pb.C.row(i) /= norm;
      pb.d[i] /= norm;
    }
  }
  const Eigen::Index n = pb.H.rows();
  const Eigen::Index p = pb.A_eq.rows();
  const Eigen::Index m = pb.C.rows();

  MatrixXd kkt = MatrixXd::Zero(n + p, n + p);
  VectorXd rhs(n + p);

  // Start from the equality-constrained minimiser.
  kkt.topLeftCorner(n, n) = pb.H;
  if (p > 0) {
    kkt.topRightCorner(n, p) = pb.A_eq.transpose();
    kkt.bottomLeftCorner(p, n) = pb.A_eq;
  }
  rhs.head(n) = -pb.g;
  if (p > 0) rhs.tail(p) = pb.b_eq;
  VectorXd sol = kkt.fullPivLu().solve(rhs);
  VectorXd x = sol.head(n);
  VectorXd y = p > 0 ? VectorXd(sol.tail(p)) : VectorXd::Zero(0);

  Result result;
  if (m == 0) {
    result.x = x;
    result.objective = objective(pb, x);
    result.iterations = 1;
    const double eq_res = p > 0 ? inf_norm(pb.A_eq * x - pb.b_eq) : 0.0;
    result.converged = std::isfinite(result.objective) && eq_res < 1e-8;
    return result;
  }

  VectorXd z = (pb.d - pb.C * x).cwiseMax(1.0);
  VectorXd lambda = VectorXd::Ones(m);
  const double scale = 1.0 + std::max({inf_norm(pb.g), inf_norm(pb.d),
                                       p > 0 ? inf_norm(pb.b_eq) : 0.0});

  auto solve_direction = [&](const VectorXd& r_d, const VectorXd& r_e, const VectorXd& r_i,
                             const VectorXd& r_c, const Eigen::PartialPivLU<MatrixXd>& lu,
                             const VectorXd& w, VectorXd& dx, VectorXd& dy, VectorXd& dl,
                             VectorXd& dz) {
    const VectorXd inner = w.cwiseProduct(r_i) - r_c.cwiseQuotient(z);
    VectorXd b(n + p);
    b.head(n) = -r_d - pb.C.transpose() * inner;
    if (p > 0) b.tail(p) = -r_e;
    const VectorXd step = lu.solve(b);
    dx = step.head(n);
    dy = p > 0 ? VectorXd(step.tail(p)) : VectorXd::Zero(0);
    dl = w.cwiseProduct(pb.C * dx + r_i) - r_c.cwiseQuotient(z);
    dz = -(r_c + z.cwiseProduct(dl)).cwiseQuotient(lambda);
  };

  for (int it = 0; it < options.max_iterations; ++it) {
    VectorXd r_d = pb.H * x + pb.g + pb.C.transpose() * lambda;
    if (p > 0) r_d += pb.A_eq.transpose() * y;
    const VectorXd r_e = p > 0 ? VectorXd(pb.A_eq * x - pb.b_eq) : VectorXd::Zero(0);
    const VectorXd r_i = pb.C * x + z - pb.d;
    const double mu = lambda.dot(z) / static_cast<double>(m);
    result.iterations = it;
    if (inf_norm(r_d) <= options.tolerance * scale && inf_norm(r_e) <= options.tolerance &&
        inf_norm(r_i) <= options.tolerance * scale && mu <= options.tolerance) {
      result.converged = true;
      break;
    }

    const VectorXd w = lambda.cwiseQuotient(z);
    kkt.topLeftCorner(n, n) = pb.H + pb.C.transpose() * w.asDiagonal() * pb.C;
    const Eigen::PartialPivLU<MatrixXd> lu(kkt);

    VectorXd dx, dy, dl, dz;
    VectorXd r_c = lambda.cwiseProduct(z);
    solve_direction(r_d, r_e, r_i, r_c, lu, w, dx, dy, dl, dz);
    const double a_aff = std::min(max_step(lambda, dl), max_step(z, dz));
    const double mu_aff =
        (lambda + a_aff * dl).dot(z + a_aff * dz) / static_cast<double>(m);
    // Stay centred while far from dual feasibility, or mu collapses first and
    // the iterates stick to the boundary.
    const double sigma = std::max(std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3),
                                  std::min(0.5, inf_norm(r_d) / scale));

    r_c = lambda.cwiseProduct(z) + dl.cwiseProduct(dz) - VectorXd::Constant(m, sigma * mu);
    solve_direction(r_d, r_e, r_i, r_c, lu, w, dx, dy, dl, dz);
    const double alpha =
        std::min(1.0, 0.99 * std::min(max_step(lambda, dl), max_step(z, dz)));
    if (!(alpha > 0.0) || !dx.allFinite()) break;
    x += alpha * dx;
    if (p > 0) y += alpha * dy;
    lambda += alpha * dl;
    z += alpha * dz;
  }

  if (!result.converged) {
    // Accept a solution that stalled just short of the strict tolerance.
    const double eq_res = p > 0 ? inf_norm(pb.A_eq * x - pb.b_eq) : 0.0;
    const double viol = std::max(0.0, (pb.C * x - pb.d).maxCoeff());
    const double mu = lambda.dot(z) / static_cast<double>(m);
    VectorXd r_d = pb.H * x + pb.g + pb.C.transpose() * lambda;
    if (p > 0) r_d += pb.A_eq.transpose() * y;
    result.converged = eq_res < 1e-8 && viol < 1e-7 && mu < 1e-7 && inf_norm(r_d) < 1e-6 * scale;
  }
  result.x = x;
  result.objective = objective(problem, x);
  return result;
}

}  // namespace shuttle::qp
