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

#ifndef JPATOMO_MOMENTS_H_
#define JPATOMO_MOMENTS_H_

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "jpatomo/detection_chain.h"
#include "jpatomo/histogram.h"

namespace jpatomo {

/// First and second moments of the two axes of one histogram.
struct HistogramMoments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;
  std::uint64_t n = 0;
};

/// Moments from bin centers weighted by counts. Variances get Sheppard's
/// correction (minus width^2 / 12, clamped at 0); the covariance does not.
/// Throws kRangeTooSmall when more than 1% of the samples overflowed and
/// kInvalidInput when fewer than two samples are in range.
HistogramMoments moments_from_histogram(const Histogram2D& h);

/// Means and covariance of the measured quadratures (X1, P1, X2, P2).
struct MomentSet {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  std::uint64_t n = 0;
};

/// Assembles all ten second moments from the six pair histograms. Each
/// variance is the average over the three histograms that contain it.
MomentSet moments_from_histograms(const HistogramSet& set);

/// Mergeable running mean and co-moment matrix of the measured quadratures.
class StreamingMoments {
 public:
  void add(const MeasurementRecord& r);
  void add(std::span<const MeasurementRecord> records) {
    for (const auto& r : records) add(r);
  }
  /// Chan et al. pairwise combination.
  void merge(const StreamingMoments& other);

  std::uint64_t count() const { return n_; }
  /// Population (1/n) covariance, matching the histogram estimator.
  MomentSet moments() const;

 private:
  std::uint64_t n_ = 0;
  Eigen::Vector4d mean_ = Eigen::Vector4d::Zero();
  Eigen::Matrix4d comoment_ = Eigen::Matrix4d::Zero();
};

}  // namespace jpatomo

#endif  // JPATOMO_MOMENTS_H_
