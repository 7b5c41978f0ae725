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

#include "jpatomo/histogram.h"

#include <cmath>

#include "jpatomo/error.h"

namespace jpatomo {

std::string_view quad_label(Quad q) {
  switch (q) {
    case Quad::kX1: return "X1";
    case Quad::kP1: return "P1";
    case Quad::kX2: return "X2";
    case Quad::kP2: return "P2";
  }
  return "?";
}

int Axis::locate(double v) const {
  if (!(v >= lo) || !(v < hi)) return -1;
  int k = static_cast<int>((v - lo) / (hi - lo) * bins);
  // Rounding can push values just below hi into bin `bins`.
  return k >= bins ? bins - 1 : k;
}

Histogram2D::Histogram2D(Quad axis_x, Quad axis_y, Axis x, Axis y)
    : label_x_(axis_x), label_y_(axis_y), x_(x), y_(y) {
  for (const Axis* a : {&x_, &y_}) {
    if (a->bins < 2) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least 2 bins per axis");
    if (!std::isfinite(a->lo) || !std::isfinite(a->hi) || !(a->hi > a->lo)) {
      throw Error(ErrorCode::kInvalidArgument, "histogram range must be finite and increasing");
    }
  }
  counts_.assign(static_cast<std::size_t>(x_.bins) * y_.bins, 0);
}

std::vector<double> Histogram2D::edges_x() const {
  std::vector<double> e(x_.bins + 1);
  for (int k = 0; k <= x_.bins; ++k) e[k] = x_.edge(k);
  return e;
}

std::vector<double> Histogram2D::edges_y() const {
  std::vector<double> e(y_.bins + 1);
  for (int k = 0; k <= y_.bins; ++k) e[k] = y_.edge(k);
  return e;
}

void Histogram2D::merge(const Histogram2D& other) {
  if (!(x_ == other.x_) || !(y_ == other.y_) || label_x_ != other.label_x_ || label_y_ != other.label_y_) {
    throw Error(ErrorCode::kInvalidArgument, "cannot merge histograms with different axes");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  n_total_ += other.n_total_;
  overflow_ += other.overflow_;
}

Binning Binning::from_prefix(std::span<const MeasurementRecord> prefix, double n_sigma, int bins) {
  if (prefix.size() < 2) throw Error(ErrorCode::kInvalidArgument, "binning prefix needs at least 2 records");
  Binning b;
  for (int q = 0; q < 4; ++q) {
    double mean = 0.0;
    for (const auto& r : prefix) mean += measured_quadratures(r)[q];
    mean /= static_cast<double>(prefix.size());
    double var = 0.0;
    for (const auto& r : prefix) {
      const double d = measured_quadratures(r)[q] - mean;
      var += d * d;
    }
    var /= static_cast<double>(prefix.size() - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 0)) throw Error(ErrorCode::kRangeTooSmall, "binning prefix has zero spread");
    b.axes[q] = Axis{mean - n_sigma * sd, mean + n_sigma * sd, bins};
  }
  return b;
}

Binning Binning::symmetric(double half_range, int bins) {
  Binning b;
  for (auto& a : b.axes) a = Axis{-half_range, half_range, bins};
  return b;
}

HistogramSet::HistogramSet(const Binning& binning) : binning_(binning) {
  hists_.reserve(kPairs.size());
  for (const auto& [a, b] : kPairs) hists_.emplace_back(a, b, binning.axes[index(a)], binning.axes[index(b)]);
}

void HistogramSet::fill(const MeasurementRecord& record) {
  const auto q = measured_quadratures(record);
  int idx[4];
  for (int k = 0; k < 4; ++k) idx[k] = binning_.axes[k].locate(q[k]);
  for (std::size_t h = 0; h < kPairs.size(); ++h) {
    hists_[h].fill_index(idx[index(kPairs[h][0])], idx[index(kPairs[h][1])]);
  }
}

void HistogramSet::merge(const HistogramSet& other) {
  if (hists_.size() != other.hists_.size()) throw Error(ErrorCode::kInvalidArgument, "histogram set mismatch");
  for (std::size_t h = 0; h < hists_.size(); ++h) hists_[h].merge(other.hists_[h]);
}

const Histogram2D& HistogramSet::pair(Quad a, Quad b) const {
  for (const auto& h : hists_) {
    if ((h.label_x() == a && h.label_y() == b) || (h.label_x() == b && h.label_y() == a)) return h;
  }
  throw Error(ErrorCode::kInvalidArgument, "no histogram for that quadrature pair");
}

HistogramSet accumulate_histograms(std::span<const MeasurementRecord> records, const Binning& binning) {
  HistogramSet set(binning);
  for (const auto& r : records) set.fill(r);
  return set;
}

}  // namespace jpatomo
