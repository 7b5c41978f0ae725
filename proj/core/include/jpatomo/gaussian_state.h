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

#ifndef JPATOMO_GAUSSIAN_STATE_H_
#define JPATOMO_GAUSSIAN_STATE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace jpatomo {

// Quadratures follow b = x + i p, so the vacuum variance of each quadrature
// is 1/4. Vectors and matrices are ordered (x1, p1, x2, p2, ...).

/// Index of a quadrature in the two-mode ordering.
enum class Quad : int { kX1 = 0, kP1 = 1, kX2 = 2, kP2 = 3 };

constexpr int index(Quad q) { return static_cast<int>(q); }

inline constexpr double kVacuumVariance = 0.25;

/// A point in quadrature phase space.
struct QuadPoint {
  Eigen::VectorXd values;
};

/// Mean vector and symmetric covariance matrix of an n-mode Gaussian state.
///
/// Construction checks shape, finiteness and symmetry (1e-12 relative to the
/// largest entry). Positivity and the uncertainty condition are checked by
/// is_physical() and by the sampler, since estimated covariances may violate
/// them slightly.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

GaussianState vacuum_state(int n_modes);

/// Standard symplectic form, block diagonal with [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Symplectic matrix of U(r) = exp[r(b1 b2 - b1^dag b2^dag)] acting on
/// (x1, p1, x2, p2). Sign convention: x1 - x2 and p1 + p2 are squeezed, so
/// <x1 x2> > 0 and <p1 p2> < 0 on vacuum input for r > 0.
Eigen::Matrix4d two_mode_squeeze_symplectic(double r);

GaussianState two_mode_squeeze(const GaussianState& state, double r);

/// Two-mode squeezed vacuum convolved with thermal noise of n_add photons per
/// mode: diagonal cosh(2r)/4 + n_add/2, <x1 x2> = sinh(2r)/4,
/// <p1 p2> = -sinh(2r)/4.
GaussianState tms_theory_covariance(double r, double n_add);

/// Adds n_add/2 to every quadrature variance.
GaussianState add_thermal_noise(const GaussianState& state, double n_add);

/// Wigner function of the state, a multivariate normal density in the
/// quadratures. Throws kSingularCovariance if det(cov) <= 1e-300.
double wigner(const GaussianState& state, const QuadPoint& alpha);

/// Joint Gaussian of quadratures i and j (marginalizing a Gaussian selects the
/// corresponding sub-blocks). The result is a one-mode state over (i, j).
GaussianState marginal(const GaussianState& state, int i, int j);
GaussianState marginal(const GaussianState& state, Quad i, Quad j);

/// Var(x1 - x2) + Var(p1 + p2). Equals 1 for vacuum; D < 1 certifies two-mode
/// squeezing below the standard quantum limit.
double witness(const GaussianState& state);

/// Smallest eigenvalue of the Hermitian matrix cov + (i/4) Omega.
double min_uncertainty_eigenvalue(const GaussianState& state);

bool is_physical(const GaussianState& state, double tolerance = 1e-10);

/// Draws from N(mean, cov) using a Cholesky factor of cov + jitter * I.
/// Throws kInvalidCovariance when cov is not positive semi-definite.
class GaussianSampler {
 public:
  static constexpr double kJitter = 1e-12;

  explicit GaussianSampler(const GaussianState& state);

  int dim() const { return static_cast<int>(mean_.size()); }

  /// Writes one draw into `out` (size dim()).
  template <typename Engine>
  void draw(Engine& engine, std::normal_distribution<double>& normal, std::span<double> out) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd chol_;  // lower triangular
};

/// n independent draws. Deterministic for a fixed seed irrespective of the
/// number of worker threads (0 = hardware concurrency).
std::vector<QuadPoint> sample(const GaussianState& state, std::size_t n, std::uint64_t seed,
                              unsigned threads = 0);

// ---------------------------------------------------------------------------

template <typename Engine>
void GaussianSampler::draw(Engine& engine, std::normal_distribution<double>& normal,
                           std::span<double> out) const {
  const int d = dim();
  double z[16];
  for (int k = 0; k < d; ++k) z[k] = normal(engine);
  for (int row = 0; row < d; ++row) {
    double acc = mean_[row];
    for (int col = 0; col <= row; ++col) acc += chol_(row, col) * z[col];
    out[row] = acc;
  }
}

}  // namespace jpatomo

#endif  // JPATOMO_GAUSSIAN_STATE_H_
