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

#include "jpatomo/levenberg_marquardt.h"

#include <algorithm>
#include <cmath>

namespace jpatomo {

namespace {

void project(Eigen::VectorXd& p, const std::optional<Eigen::VectorXd>& lower) {
  if (lower) p = p.cwiseMax(*lower);
}

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd initial, int n_residuals,
                             const LmOptions& options) {
  const auto n = initial.size();
  LmResult result;
  Eigen::VectorXd p = std::move(initial);
  project(p, options.lower_bounds);

  Eigen::VectorXd r(n_residuals), r_trial(n_residuals);
  Eigen::MatrixXd jac(n_residuals, n), jac_trial(n_residuals, n);
  fn(p, r, jac);
  double ssr = r.squaredNorm();
  double lambda = options.initial_damping;
  const double tol = options.relative_step_tolerance;

  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (ssr == 0.0 || grad.cwiseAbs().maxCoeff() == 0.0) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd scale = normal.diagonal().cwiseMax(1e-12 * std::max(normal.diagonal().maxCoeff(), 1e-300));
    Eigen::MatrixXd damped = normal;
    damped.diagonal() += lambda * scale;
    Eigen::VectorXd trial = p - damped.ldlt().solve(grad);
    project(trial, options.lower_bounds);
    const Eigen::VectorXd step = trial - p;
    const bool tiny = step.norm() <= tol * (p.norm() + tol);

    fn(trial, r_trial, jac_trial);
    const double ssr_trial = r_trial.squaredNorm();
    if (std::isfinite(ssr_trial) && ssr_trial <= ssr) {
      p = trial;
      r = r_trial;
      jac = jac_trial;
      ssr = ssr_trial;
      lambda = std::max(lambda / 10, 1e-15);
      if (tiny) {
        result.converged = true;
        break;
      }
    } else {
      if (tiny) {
        result.converged = true;
        break;
      }
      lambda *= 10;
      if (lambda > 1e20) break;
    }
  }

  result.params = p;
  result.sum_squared_residuals = ssr;
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  result.inverse_normal = normal.completeOrthogonalDecomposition().pseudoInverse();
  return result;
}

}  // namespace jpatomo
