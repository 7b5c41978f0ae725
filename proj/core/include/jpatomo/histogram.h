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

#ifndef JPATOMO_HISTOGRAM_H_
#define JPATOMO_HISTOGRAM_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "jpatomo/detection_chain.h"
#include "jpatomo/gaussian_state.h"

namespace jpatomo {

// Measured quadratures: X_k = Re S_k, P_k = Im S_k, indexed like Quad.

std::string_view quad_label(Quad q);

inline std::array<double, 4> measured_quadratures(const MeasurementRecord& r) {
  return {r.s1.real(), r.s1.imag(), r.s2.real(), r.s2.imag()};
}

/// Uniform binning of one axis: `bins` bins covering [lo, hi).
struct Axis {
  double lo = -1.0;
  double hi = 1.0;
  int bins = 128;

  double width() const { return (hi - lo) / bins; }
  double edge(int k) const { return lo + (hi - lo) * k / bins; }
  double center(int k) const { return lo + (hi - lo) * (k + 0.5) / bins; }
  /// Bin index, or -1 outside [lo, hi).
  int locate(double x) const;
  bool operator==(const Axis&) const = default;
};

/// Counts of (x, y) pairs on a rectangular grid. Out-of-range samples are
/// tallied in overflow, so sum(counts) + overflow == n_total.
class Histogram2D {
 public:
  Histogram2D(Quad axis_x, Quad axis_y, Axis x, Axis y);

  Quad label_x() const { return label_x_; }
  Quad label_y() const { return label_y_; }
  const Axis& x() const { return x_; }
  const Axis& y() const { return y_; }
  std::vector<double> edges_x() const;
  std::vector<double> edges_y() const;

  std::uint64_t count(int ix, int iy) const { return counts_[static_cast<std::size_t>(ix) * y_.bins + iy]; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t n_total() const { return n_total_; }
  std::uint64_t overflow() const { return overflow_; }

  void fill(double x, double y) { fill_index(x_.locate(x), y_.locate(y)); }
  void fill_index(int ix, int iy) {
    ++n_total_;
    if (ix < 0 || iy < 0) {
      ++overflow_;
    } else {
      ++counts_[static_cast<std::size_t>(ix) * y_.bins + iy];
    }
  }

  /// Adds another histogram with identical axes; throws kInvalidArgument
  /// otherwise.
  void merge(const Histogram2D& other);

  bool operator==(const Histogram2D&) const = default;

 private:
  Quad label_x_;
  Quad label_y_;
  Axis x_;
  Axis y_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_total_ = 0;
  std::uint64_t overflow_ = 0;
};

/// Axis per measured quadrature (X1, P1, X2, P2).
struct Binning {
  std::array<Axis, 4> axes;

  /// Axes spanning mean +- n_sigma standard deviations of each quadrature in
  /// `prefix`, `bins` bins each.
  static Binning from_prefix(std::span<const MeasurementRecord> prefix, double n_sigma = 6.0, int bins = 128);
  /// Same symmetric range [-half_range, half_range) on every axis.
  static Binning symmetric(double half_range, int bins);

  bool operator==(const Binning&) const = default;
};

/// The six quadrature-pair histograms, in the order
/// {X1,P1}, {X2,P2}, {X1,P2}, {X2,P1}, {X1,X2}, {P1,P2}.
class HistogramSet {
 public:
  static constexpr std::array<std::array<Quad, 2>, 6> kPairs = {{
      {Quad::kX1, Quad::kP1},
      {Quad::kX2, Quad::kP2},
      {Quad::kX1, Quad::kP2},
      {Quad::kX2, Quad::kP1},
      {Quad::kX1, Quad::kX2},
      {Quad::kP1, Quad::kP2},
  }};

  explicit HistogramSet(const Binning& binning);

  void fill(const MeasurementRecord& record);
  void merge(const HistogramSet& other);

  const Histogram2D& operator[](std::size_t k) const { return hists_[k]; }
  const Histogram2D& pair(Quad a, Quad b) const;
  std::size_t size() const { return hists_.size(); }
  const Binning& binning() const { return binning_; }

  bool operator==(const HistogramSet&) const = default;

 private:
  Binning binning_;
  std::vector<Histogram2D> hists_;
};

/// One pass over `records`, filling all six histograms.
HistogramSet accumulate_histograms(std::span<const MeasurementRecord> records, const Binning& binning);

}  // namespace jpatomo

#endif  // JPATOMO_HISTOGRAM_H_
