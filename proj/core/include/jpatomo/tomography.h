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

#ifndef JPATOMO_TOMOGRAPHY_H_
#define JPATOMO_TOMOGRAPHY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "jpatomo/detection_chain.h"
#include "jpatomo/gaussian_state.h"
#include "jpatomo/histogram.h"
#include "jpatomo/moments.h"

namespace jpatomo {

/// Per-channel factors multiplying the measured quadratures.
struct ScaleFactors {
  double g1 = 1.0;
  double g2 = 1.0;
};

/// Per-quadrature pump-off variance of a calibrated channel: vacuum signal
/// (1/4) plus thermal detection noise ((2 n_noise + 1)/4).
constexpr double reference_variance(double n_noise) { return (2 * n_noise + 2) / 4; }

/// Scale factors that bring each channel's mean pump-off quadrature variance
/// to reference_variance(n_noise). Throws kDegenerateReference on zero
/// variance.
ScaleFactors calibrate(const MomentSet& moments_off, double n_noise);
ScaleFactors calibrate(const MomentSet& moments_off, double n_noise_ch1, double n_noise_ch2);

MomentSet apply_scale(const MomentSet& moments, const ScaleFactors& scale);

/// Covariance of (x1, p1, x2, p2) from calibrated pump-on and pump-off
/// moments: V_ii = Var_on - Var_off + 1/4, V_ij = Cov_on - Cov_off.
Eigen::Matrix4d deconvolve(const MomentSet& moments_on, const MomentSet& moments_off);

struct SqueezingFit {
  /// Two-parameter fit (r, n_add >= 0).
  double r = 0.0;
  double n_add = 0.0;
  double residual = 0.0;
  /// Pure two-mode squeezed vacuum fit (n_add = 0).
  double r_pure = 0.0;
  double residual_pure = 0.0;
};

/// Unweighted least squares of the ten independent entries of V against
/// tms_theory_covariance(r, n_add). Residuals are sums of squares.
SqueezingFit fit_squeezing(const Eigen::Matrix4d& v);

struct TomographyResult {
  Eigen::Matrix4d v = Eigen::Matrix4d::Identity() / 4;
  double r_fit = 0.0;
  double r_fit_pure = 0.0;
  double n_add_fit = 0.0;
  double residual = 0.0;
  double residual_pure = 0.0;
  double witness_d = 1.0;
  double min_uncertainty_eigenvalue = 0.0;
  bool marginally_unphysical = false;
  ScaleFactors scale_factors;
  std::uint64_t n_records_on = 0;
  std::uint64_t n_records_off = 0;
};

/// Density of a two-quadrature marginal sampled on a square grid.
struct WignerGrid2D {
  Quad axis_x = Quad::kX1;
  Quad axis_y = Quad::kP1;
  std::vector<double> xs;
  std::vector<double> ys;
  /// Row-major, density[i * ys.size() + j] at (xs[i], ys[j]).
  std::vector<double> density;
};

struct WignerGridSpec {
  /// Defaults to 4 standard deviations of the widest quadrature.
  std::optional<double> half_range;
  int points = 101;
};

struct Reconstruction {
  TomographyResult result;
  WignerGrid2D x1p1;
  WignerGrid2D x1x2;
  /// {x1, x2} marginal of the ideal squeezed vacuum at r = r_fit.
  WignerGrid2D ideal_x1x2;
};

WignerGrid2D wigner_grid(const GaussianState& state, Quad a, Quad b, double half_range, int points);

/// Fits, witness and marginal Wigner grids for an estimated covariance.
/// Slightly unphysical estimates (uncertainty eigenvalue in [-1e-6, -1e-10))
/// are flagged and processed; anything worse throws kUnphysicalState.
Reconstruction reconstruct(const Eigen::Matrix4d& v, const WignerGridSpec& grid = {});

// Acquisition: records streamed straight into accumulators.

struct AcquisitionOptions {
  std::size_t n_records = 0;
  std::uint64_t seed = 0;
  int bins = 128;
  double n_sigma = 6.0;
  /// Binning is set from the first records of the run.
  std::size_t binning_prefix = 10000;
  std::optional<Binning> binning;
  unsigned threads = 0;
};

struct Acquisition {
  HistogramSet histograms;
  /// Unbinned moments of the same records.
  StreamingMoments direct;
};

/// Generates n_records from `source` and accumulates them. Histogram counts
/// are exact and streaming moments are merged in block order, so results do
/// not depend on the thread count.
Acquisition acquire(const RecordSource& source, const AcquisitionOptions& options);

struct TomographyRun {
  Acquisition on;
  Acquisition off;
  MomentSet on_raw;
  MomentSet off_raw;
  ScaleFactors scale;
  Eigen::Matrix4d v;
  SqueezingFit fit;
};

/// Pump-on and pump-off acquisitions of `state` (independent noise streams
/// from the same seed), calibration against the pump-off reference,
/// deconvolution and squeezing fits. Moments come from the histograms.
TomographyRun run_tomography(const GaussianState& state, const DetectionConfig& detection,
                             const AcquisitionOptions& options);

TomographyResult summarize(const TomographyRun& run);

}  // namespace jpatomo

#endif  // JPATOMO_TOMOGRAPHY_H_
