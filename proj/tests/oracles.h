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

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#ifndef JPATOMO_TESTS_ORACLES_H_
#define JPATOMO_TESTS_ORACLES_H_

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace jpatomo::oracle {

/// exp(m) by scaling and squaring of a truncated Taylor series.
inline Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  int squarings = 0;
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const Eigen::MatrixXd a = m / std::pow(2.0, squarings);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Generator K of the two-mode squeezer on (x1, p1, x2, p2), S(r) = exp(r K),
/// in the convention where x1 - x2 and p1 + p2 are squeezed:
/// dx1/dr = x2, dp1/dr = -p2 and symmetrically for mode 2.
inline Eigen::MatrixXd tms_generator() {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(4, 4);
  k(0, 2) = 1;
  k(2, 0) = 1;
  k(1, 3) = -1;
  k(3, 1) = -1;
  return k;
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4 : 2);
  return acc * h / 3;
}

/// 2D Simpson over a square.
inline double simpson2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                        double by, int n) {
  return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, ay, by, n); }, ax, bx, n);
}

/// 2D normal density written out from the covariance entries.
inline double normal2d(double x, double y, double vxx, double vyy, double vxy) {
  const double det = vxx * vyy - vxy * vxy;
  const double q = (vyy * x * x - 2 * vxy * x * y + vxx * y * y) / det;
  return std::exp(-q / 2) / (2 * std::numbers::pi * std::sqrt(det));
}

/// Filtered-mode covariance computed mode by mode: every discrete sideband
/// pair (k, -k) is a two-mode squeezer with cosh(r_k) = sqrt(G_k) acting on
/// thermal inputs; the covariance of all grid modes is assembled explicitly
/// and projected onto the real filter weights w1, w2 (already multiplied by
/// sqrt of the quadrature weight). The pump bin k = 0 is a single-mode
/// squeezer and carries zero weight in the filters used with this oracle.
inline Eigen::Matrix4d pairwise_filtered_covariance(const std::vector<double>& gains,
                                                    const std::vector<double>& w1,
                                                    const std::vector<double>& w2, double nbar) {
  const int n = static_cast<int>(gains.size());
  const int c = n / 2;
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) big(2 * k, 2 * k) = big(2 * k + 1, 2 * k + 1) = (1 + 2 * nbar) / 4;
  for (int j = 1; j <= c; ++j) {
    const int up = c + j, dn = c - j;
    const double r = std::acosh(std::sqrt(gains[up]));
    Eigen::MatrixXd s = matrix_exp(r * tms_generator());
    const int idx[4] = {2 * up, 2 * up + 1, 2 * dn, 2 * dn + 1};
    Eigen::MatrixXd local(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) local(a, b) = big(idx[a], idx[b]);
    local = s * local * s.transpose();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) big(idx[a], idx[b]) = local(a, b);
  }
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(4, 2 * n);
  for (int k = 0; k < n; ++k) {
    proj(0, 2 * k) = w1[k];
    proj(1, 2 * k + 1) = w1[k];
    proj(2, 2 * k) = w2[k];
    proj(3, 2 * k + 1) = w2[k];
  }
  return proj * big * proj.transpose();
}

}  // namespace jpatomo::oracle

#endif  // JPATOMO_TESTS_ORACLES_H_
