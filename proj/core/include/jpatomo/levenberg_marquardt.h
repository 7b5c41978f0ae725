// Copyright 2026 The jpatomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JPATOMO_LEVENBERG_MARQUARDT_H_
#define JPATOMO_LEVENBERG_MARQUARDT_H_

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace jpatomo {

/// Fills `residuals` (size m) and `jacobian` (m x n) at `params`.
using ResidualFn =
    std::function<void(const Eigen::VectorXd& params, Eigen::VectorXd& residuals, Eigen::MatrixXd& jacobian)>;

struct LmOptions {
  int max_iterations = 1000;
  /// Converged once a step changes the parameters by less than this, relative.
  double relative_step_tolerance = 1e-10;
  double initial_damping = 1e-3;
  /// Optional per-parameter lower bounds; steps are projected onto them.
  std::optional<Eigen::VectorXd> lower_bounds;
};

struct LmResult {
  Eigen::VectorXd params;
  /// (J^T J)^{-1} at the solution; multiply by the residual variance for
  /// asymptotic parameter covariances.
  Eigen::MatrixXd inverse_normal;
  double sum_squared_residuals = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Gauss-Newton with Marquardt diagonal scaling.
LmResult levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd initial, int n_residuals,
                             const LmOptions& options = {});

}  // namespace jpatomo

#endif  // JPATOMO_LEVENBERG_MARQUARDT_H_
