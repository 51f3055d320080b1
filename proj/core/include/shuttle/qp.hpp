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

#include <Eigen/Dense>

namespace shuttle::qp {

// minimize 0.5 x'Hx + g'x  subject to  A_eq x = b_eq,  C x <= d.
struct Problem {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd C;
  Eigen::VectorXd d;
};

struct Options {
  int max_iterations{80};
  double tolerance{1e-10};
};

struct Result {
  Eigen::VectorXd x;
  double objective{0.0};
  int iterations{0};
  bool converged{false};
};

// Dense Mehrotra predictor-corrector interior-point method. Sized for the
// small problems here (tens of variables, a few hundred constraints).
Result solve(const Problem& problem, const Options& options = {});

double objective(const Problem& problem, const Eigen::VectorXd& x);

}  // namespace shuttle::qp
