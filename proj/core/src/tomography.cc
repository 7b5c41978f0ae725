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

#include "jpatomo/tomography.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "jpatomo/error.h"
#include "jpatomo/levenberg_marquardt.h"
#include "jpatomo/rng.h"

namespace jpatomo {

namespace {

constexpr int kUpper[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};

double model_entry(int i, int j, double r, double n_add) {
  if (i == j) return std::cosh(2 * r) / 4 + n_add / 2;
  if (i == 0 && j == 2) return std::sinh(2 * r) / 4;
  if (i == 1 && j == 3) return -std::sinh(2 * r) / 4;
  return 0.0;
}

double d_model_dr(int i, int j, double r) {
  if (i == j) return std::sinh(2 * r) / 2;
  if (i == 0 && j == 2) return std::cosh(2 * r) / 2;
  if (i == 1 && j == 3) return -std::cosh(2 * r) / 2;
  return 0.0;
}

double residual_ssr(const Eigen::Matrix4d& v, double r, double n_add) {
  double acc = 0.0;
  for (const auto& [i, j] : kUpper) {
    const double d = model_entry(i, j, r, n_add) - v(i, j);
    acc += d * d;
  }
  return acc;
}

}  // namespace

ScaleFactors calibrate(const MomentSet& moments_off, double n_noise) {
  return calibrate(moments_off, n_noise, n_noise);
}

ScaleFactors calibrate(const MomentSet& moments_off, double n_noise_ch1, double n_noise_ch2) {
  if (!(n_noise_ch1 >= 0) || !(n_noise_ch2 >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "n_noise must be >= 0");
  }
  const double var1 = 0.5 * (moments_off.cov(0, 0) + moments_off.cov(1, 1));
  const double var2 = 0.5 * (moments_off.cov(2, 2) + moments_off.cov(3, 3));
  if (!(var1 > 0) || !(var2 > 0)) {
    throw Error(ErrorCode::kDegenerateReference, "pump-off reference has zero variance");
  }
  return {std::sqrt(reference_variance(n_noise_ch1) / var1), std::sqrt(reference_variance(n_noise_ch2) / var2)};
}

MomentSet apply_scale(const MomentSet& moments, const ScaleFactors& scale) {
  const Eigen::Vector4d s(scale.g1, scale.g1, scale.g2, scale.g2);
  MomentSet out = moments;
  out.mean = s.cwiseProduct(moments.mean);
  out.cov = s.asDiagonal() * moments.cov * s.asDiagonal();
  return out;
}

Eigen::Matrix4d deconvolve(const MomentSet& moments_on, const MomentSet& moments_off) {
  Eigen::Matrix4d v = moments_on.cov - moments_off.cov;
  v.diagonal().array() += kVacuumVariance;
  return 0.5 * (v + v.transpose());
}

SqueezingFit fit_squeezing(const Eigen::Matrix4d& v) {
  if (!v.allFinite()) throw Error(ErrorCode::kInvalidInput, "covariance has non-finite entries");
  const double r0 = std::asinh(4 * std::abs(v(0, 2))) / 2;

  const ResidualFn two = [&](const Eigen::VectorXd& p, Eigen::VectorXd& res, Eigen::MatrixXd& jac) {
    for (int k = 0; k < 10; ++k) {
      const auto [i, j] = kUpper[k];
      res[k] = model_entry(i, j, p[0], p[1]) - v(i, j);
      jac(k, 0) = d_model_dr(i, j, p[0]);
      jac(k, 1) = i == j ? 0.5 : 0.0;
    }
  };
  const ResidualFn pure = [&](const Eigen::VectorXd& p, Eigen::VectorXd& res, Eigen::MatrixXd& jac) {
    for (int k = 0; k < 10; ++k) {
      const auto [i, j] = kUpper[k];
      res[k] = model_entry(i, j, p[0], 0.0) - v(i, j);
      jac(k, 0) = d_model_dr(i, j, p[0]);
    }
  };

  LmOptions pure_options;
  pure_options.lower_bounds = Eigen::VectorXd::Zero(1);
  const LmResult pure_fit = levenberg_marquardt(pure, Eigen::VectorXd::Constant(1, r0), 10, pure_options);
  LmOptions two_options;
  two_options.lower_bounds = Eigen::Vector2d(0.0, -1e300);
  const LmResult two_fit = levenberg_marquardt(two, Eigen::Vector2d(r0, 0.0), 10, two_options);
  if (!pure_fit.converged || !two_fit.converged) {
    throw Error(ErrorCode::kNoConvergence, "squeezing fit did not converge");
  }

  SqueezingFit out;
  out.r_pure = pure_fit.params[0];
  out.residual_pure = residual_ssr(v, out.r_pure, 0.0);
  if (two_fit.params[1] >= 0) {
    out.r = two_fit.params[0];
    out.n_add = two_fit.params[1];
  } else {
    // Residual is quadratic in n_add, so the constrained optimum sits on n_add = 0.
    out.r = out.r_pure;
    out.n_add = 0.0;
  }
  out.residual = residual_ssr(v, out.r, out.n_add);
  return out;
}

WignerGrid2D wigner_grid(const GaussianState& state, Quad a, Quad b, double half_range, int points) {
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "Wigner grid needs at least 2 points per axis");
  if (!(half_range > 0)) throw Error(ErrorCode::kInvalidArgument, "Wigner grid range must be > 0");
  const GaussianState m = marginal(state, a, b);
  WignerGrid2D g;
  g.axis_x = a;
  g.axis_y = b;
  g.xs.resize(points);
  g.ys.resize(points);
  for (int k = 0; k < points; ++k) {
    g.xs[k] = g.ys[k] = -half_range + 2 * half_range * k / (points - 1);
  }
  g.density.resize(static_cast<std::size_t>(points) * points);
  QuadPoint p{Eigen::VectorXd(2)};
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      p.values << g.xs[i], g.ys[j];
      g.density[static_cast<std::size_t>(i) * points + j] = wigner(m, p);
    }
  }
  return g;
}

Reconstruction reconstruct(const Eigen::Matrix4d& v, const WignerGridSpec& grid) {
  const GaussianState state(Eigen::VectorXd::Zero(4), Eigen::MatrixXd(v));
  Reconstruction out;
  TomographyResult& res = out.result;
  res.v = v;
  res.min_uncertainty_eigenvalue = min_uncertainty_eigenvalue(state);
  if (res.min_uncertainty_eigenvalue < -1e-6) {
    throw Error(ErrorCode::kUnphysicalState,
                "estimated covariance violates the uncertainty relation (min eigenvalue " +
                    std::to_string(res.min_uncertainty_eigenvalue) + ")");
  }
  res.marginally_unphysical = res.min_uncertainty_eigenvalue < -1e-10;
  const SqueezingFit fit = fit_squeezing(v);
  res.r_fit = fit.r;
  res.r_fit_pure = fit.r_pure;
  res.n_add_fit = fit.n_add;
  res.residual = fit.residual;
  res.residual_pure = fit.residual_pure;
  res.witness_d = witness(state);

  const double half = grid.half_range.value_or(4 * std::sqrt(v.diagonal().maxCoeff()));
  out.x1p1 = wigner_grid(state, Quad::kX1, Quad::kP1, half, grid.points);
  out.x1x2 = wigner_grid(state, Quad::kX1, Quad::kX2, half, grid.points);
  out.ideal_x1x2 = wigner_grid(tms_theory_covariance(fit.r, 0.0), Quad::kX1, Quad::kX2, half, grid.points);
  return out;
}

Acquisition acquire(const RecordSource& source, const AcquisitionOptions& options) {
  const std::size_t n = options.n_records;
  const std::size_t blocks = block_count(n);

  Binning binning = Binning::symmetric(1.0, options.bins);
  if (options.binning) {
    binning = *options.binning;
  } else if (n >= 2) {
    const std::size_t prefix_len = std::clamp<std::size_t>(options.binning_prefix, 2, n);
    std::vector<MeasurementRecord> prefix(prefix_len);
    for (std::size_t b = 0; b * kBlockSize < prefix_len; ++b) {
      const std::size_t begin = b * kBlockSize;
      source.fill_block(b, std::span<MeasurementRecord>(prefix).subspan(begin, std::min(kBlockSize, prefix_len - begin)));
    }
    binning = Binning::from_prefix(prefix, options.n_sigma, options.bins);
  }

  const unsigned workers = worker_count(blocks, options.threads);
  std::vector<HistogramSet> hists(workers, HistogramSet(binning));
  std::vector<std::vector<MeasurementRecord>> buffers(workers);
  std::vector<StreamingMoments> block_moments(blocks);
  parallel_blocks(blocks, options.threads, [&](std::size_t block, unsigned worker) {
    auto& buf = buffers[worker];
    const std::size_t begin = block * kBlockSize;
    buf.resize(std::min(kBlockSize, n - begin));
    source.fill_block(block, buf);
    for (const auto& r : buf) hists[worker].fill(r);
    block_moments[block].add(buf);
  });

  Acquisition out{std::move(hists.front()), {}};
  for (std::size_t w = 1; w < hists.size(); ++w) out.histograms.merge(hists[w]);
  for (const auto& m : block_moments) out.direct.merge(m);
  return out;
}

TomographyRun run_tomography(const GaussianState& state, const DetectionConfig& detection,
                             const AcquisitionOptions& options) {
  const RecordSource on_source(state, detection, options.seed, true);
  const RecordSource off_source(state, detection, options.seed, false);
  TomographyRun run{acquire(on_source, options), acquire(off_source, options), {}, {}, {}, {}, {}};
  run.on_raw = moments_from_histograms(run.on.histograms);
  run.off_raw = moments_from_histograms(run.off.histograms);
  run.scale = calibrate(run.off_raw, detection.noise_ch1(), detection.noise_ch2());
  run.v = deconvolve(apply_scale(run.on_raw, run.scale), apply_scale(run.off_raw, run.scale));
  run.fit = fit_squeezing(run.v);
  return run;
}

TomographyResult summarize(const TomographyRun& run) {
  TomographyResult res;
  res.v = run.v;
  res.r_fit = run.fit.r;
  res.r_fit_pure = run.fit.r_pure;
  res.n_add_fit = run.fit.n_add;
  res.residual = run.fit.residual;
  res.residual_pure = run.fit.residual_pure;
  const GaussianState state(Eigen::VectorXd::Zero(4), Eigen::MatrixXd(run.v));
  res.witness_d = witness(state);
  res.min_uncertainty_eigenvalue = min_uncertainty_eigenvalue(state);
  res.marginally_unphysical = res.min_uncertainty_eigenvalue < -1e-10;
  res.scale_factors = run.scale;
  res.n_records_on = run.on.histograms[0].n_total();
  res.n_records_off = run.off.histograms[0].n_total();
  return res;
}

}  // namespace jpatomo
