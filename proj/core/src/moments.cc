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

#include "jpatomo/moments.h"

#include <algorithm>
#include <string>

#include "jpatomo/error.h"

namespace jpatomo {

HistogramMoments moments_from_histogram(const Histogram2D& h) {
  const std::uint64_t in_range = h.n_total() - h.overflow();
  if (h.n_total() > 0 && static_cast<double>(h.overflow()) / static_cast<double>(h.n_total()) >= 0.01) {
    throw Error(ErrorCode::kRangeTooSmall, std::to_string(h.overflow()) + " of " + std::to_string(h.n_total()) +
                                               " samples fell outside the " + std::string(quad_label(h.label_x())) +
                                               "/" + std::string(quad_label(h.label_y())) + " histogram");
  }
  if (in_range < 2) throw Error(ErrorCode::kInvalidInput, "histogram holds fewer than two samples");

  const int nx = h.x().bins, ny = h.y().bins;
  std::vector<double> row(nx, 0.0), col(ny, 0.0);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double c = static_cast<double>(h.count(i, j));
      row[i] += c;
      col[j] += c;
    }
  }
  const double n = static_cast<double>(in_range);
  HistogramMoments m;
  m.n = in_range;
  for (int i = 0; i < nx; ++i) m.mean_x += row[i] * h.x().center(i);
  for (int j = 0; j < ny; ++j) m.mean_y += col[j] * h.y().center(j);
  m.mean_x /= n;
  m.mean_y /= n;
  for (int i = 0; i < nx; ++i) {
    const double dx = h.x().center(i) - m.mean_x;
    m.var_x += row[i] * dx * dx;
  }
  for (int j = 0; j < ny; ++j) {
    const double dy = h.y().center(j) - m.mean_y;
    m.var_y += col[j] * dy * dy;
  }
  for (int i = 0; i < nx; ++i) {
    const double dx = h.x().center(i) - m.mean_x;
    double acc = 0.0;
    for (int j = 0; j < ny; ++j) acc += static_cast<double>(h.count(i, j)) * (h.y().center(j) - m.mean_y);
    m.cov_xy += dx * acc;
  }
  const double wx = h.x().width(), wy = h.y().width();
  m.var_x = std::max(m.var_x / n - wx * wx / 12, 0.0);
  m.var_y = std::max(m.var_y / n - wy * wy / 12, 0.0);
  m.cov_xy /= n;
  return m;
}

MomentSet moments_from_histograms(const HistogramSet& set) {
  MomentSet out;
  Eigen::Vector4d var_sum = Eigen::Vector4d::Zero(), mean_sum = Eigen::Vector4d::Zero();
  Eigen::Vector4d hits = Eigen::Vector4d::Zero();
  std::uint64_t n_min = ~std::uint64_t{0};
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& h = set[k];
    const auto m = moments_from_histogram(h);
    const int a = index(h.label_x()), b = index(h.label_y());
    var_sum[a] += m.var_x;
    var_sum[b] += m.var_y;
    mean_sum[a] += m.mean_x;
    mean_sum[b] += m.mean_y;
    hits[a] += 1;
    hits[b] += 1;
    out.cov(a, b) = out.cov(b, a) = m.cov_xy;
    n_min = std::min(n_min, m.n);
  }
  for (int q = 0; q < 4; ++q) {
    out.cov(q, q) = var_sum[q] / hits[q];
    out.mean[q] = mean_sum[q] / hits[q];
  }
  out.n = n_min;
  return out;
}

void StreamingMoments::add(const MeasurementRecord& r) {
  const auto q = measured_quadratures(r);
  const Eigen::Vector4d x(q[0], q[1], q[2], q[3]);
  ++n_;
  const Eigen::Vector4d d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  comoment_.noalias() += d * (x - mean_).transpose();
}

void StreamingMoments::merge(const StreamingMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const Eigen::Vector4d d = other.mean_ - mean_;
  mean_ += d * (nb / n);
  comoment_ += other.comoment_ + d * d.transpose() * (na * nb / n);
  n_ += other.n_;
}

MomentSet StreamingMoments::moments() const {
  MomentSet m;
  m.n = n_;
  m.mean = mean_;
  if (n_ > 0) {
    m.cov = comoment_ / static_cast<double>(n_);
    m.cov = (0.5 * (m.cov + m.cov.transpose())).eval();
  }
  return m;
}

}  // namespace jpatomo
