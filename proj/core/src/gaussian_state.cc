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

#include "jpatomo/gaussian_state.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "jpatomo/error.h"
#include "jpatomo/rng.h"

namespace jpatomo {

namespace {

void require_two_modes(const GaussianState& state, const char* what) {
  if (state.n_modes() != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " needs a two-mode state, got " +
                    std::to_string(state.n_modes()) + " modes");
  }
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto d = mean_.size();
  if (d == 0 || d % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "mean must have even, nonzero length");
  }
  if (cov_.rows() != d || cov_.cols() != d) {
    throw Error(ErrorCode::kInvalidArgument, "covariance shape does not match mean");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "state has non-finite entries");
  }
  const double scale = std::max(cov_.cwiseAbs().maxCoeff(), 1e-300);
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidCovariance, "covariance is not symmetric");
  }
}

GaussianState vacuum_state(int n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_modes must be >= 1");
  }
  const int d = 2 * n_modes;
  return GaussianState(Eigen::VectorXd::Zero(d), kVacuumVariance * Eigen::MatrixXd::Identity(d, d));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::Matrix4d two_mode_squeeze_symplectic(double r) {
  // Heisenberg picture: b1 -> cosh(r) b1 + sinh(r) b2^dag, and 1 <-> 2.
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  Eigen::Matrix4d m;
  // clang-format off
  m << c,  0,  s,  0,
       0,  c,  0, -s,
       s,  0,  c,  0,
       0, -s,  0,  c;
  // clang-format on
  return m;
}

GaussianState two_mode_squeeze(const GaussianState& state, double r) {
  require_two_modes(state, "two_mode_squeeze");
  if (!std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r must be finite");
  const Eigen::Matrix4d s = two_mode_squeeze_symplectic(r);
  Eigen::MatrixXd cov = s * state.cov() * s.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(s * state.mean(), std::move(cov));
}

GaussianState tms_theory_covariance(double r, double n_add) {
  if (!(n_add >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "n_add must be >= 0");
  if (!std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r must be finite");
  const double diag = std::cosh(2 * r) / 4 + n_add / 2;
  const double cross = std::sinh(2 * r) / 4;
  Eigen::MatrixXd cov = diag * Eigen::MatrixXd::Identity(4, 4);
  cov(0, 2) = cov(2, 0) = cross;
  cov(1, 3) = cov(3, 1) = -cross;
  return GaussianState(Eigen::VectorXd::Zero(4), std::move(cov));
}

GaussianState add_thermal_noise(const GaussianState& state, double n_add) {
  if (!(n_add >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "n_add must be >= 0");
  Eigen::MatrixXd cov = state.cov();
  cov.diagonal().array() += n_add / 2;
  return GaussianState(state.mean(), std::move(cov));
}

double wigner(const GaussianState& state, const QuadPoint& alpha) {
  if (alpha.values.size() != state.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "phase-space point has wrong dimension");
  }
  if (!alpha.values.allFinite()) throw Error(ErrorCode::kInvalidInput, "non-finite point");
  Eigen::LDLT<Eigen::MatrixXd> ldlt(state.cov());
  const double det = state.cov().determinant();
  if (!(det > 1e-300) || ldlt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance, "covariance determinant is not positive");
  }
  const Eigen::VectorXd d = alpha.values - state.mean();
  const double quad = d.dot(ldlt.solve(d));
  const double prefactor =
      std::pow(2 * std::numbers::pi, -static_cast<double>(state.n_modes())) / std::sqrt(det);
  return prefactor * std::exp(-0.5 * quad);
}

GaussianState marginal(const GaussianState& state, int i, int j) {
  const int d = state.dim();
  if (i < 0 || j < 0 || i >= d || j >= d || i == j) {
    throw Error(ErrorCode::kInvalidArgument, "marginal needs two distinct in-range indices");
  }
  const int idx[2] = {i, j};
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  for (int a = 0; a < 2; ++a) {
    mean[a] = state.mean()[idx[a]];
    for (int b = 0; b < 2; ++b) cov(a, b) = state.cov()(idx[a], idx[b]);
  }
  return GaussianState(mean, cov);
}

GaussianState marginal(const GaussianState& state, Quad i, Quad j) {
  return marginal(state, index(i), index(j));
}

double witness(const GaussianState& state) {
  require_two_modes(state, "witness");
  const Eigen::MatrixXd& v = state.cov();
  const double var_x_minus = v(0, 0) + v(2, 2) - 2 * v(0, 2);
  const double var_p_plus = v(1, 1) + v(3, 3) + 2 * v(1, 3);
  return var_x_minus + var_p_plus;
}

double min_uncertainty_eigenvalue(const GaussianState& state) {
  using Complex = std::complex<double>;
  const Eigen::MatrixXcd h = state.cov().cast<Complex>() +
                             Complex(0.0, 0.25) * symplectic_form(state.n_modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const GaussianState& state, double tolerance) {
  return min_uncertainty_eigenvalue(state) >= -tolerance;
}

GaussianSampler::GaussianSampler(const GaussianState& state) : mean_(state.mean()) {
  const int d = state.dim();
  if (d > 16) throw Error(ErrorCode::kInvalidArgument, "sampler supports at most 8 modes");
  const Eigen::MatrixXd& cov = state.cov();
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kJitter * scale) {
    throw Error(ErrorCode::kInvalidCovariance, "covariance is not positive semi-definite");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov + kJitter * Eigen::MatrixXd::Identity(d, d));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidCovariance, "Cholesky factorization failed");
  }
  chol_ = llt.matrixL();
}

std::vector<QuadPoint> sample(const GaussianState& state, std::size_t n, std::uint64_t seed,
                              unsigned threads) {
  const GaussianSampler sampler(state);
  std::vector<QuadPoint> out(n);
  const int d = state.dim();
  parallel_blocks(block_count(n), threads, [&](std::size_t block) {
    auto engine = block_engine(seed, block);
    std::normal_distribution<double> normal;
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(n, begin + kBlockSize);
    for (std::size_t k = begin; k < end; ++k) {
      out[k].values.resize(d);
      sampler.draw(engine, normal, std::span<double>(out[k].values.data(), d));
    }
  });
  return out;
}

}  // namespace jpatomo
