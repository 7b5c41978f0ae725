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
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "jpatomo/moments.h"

namespace jpatomo {
namespace {

std::vector<MeasurementRecord> noise_records(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sd);
  std::vector<MeasurementRecord> out(n);
  for (auto& r : out) {
    r.s1 = {g(rng), g(rng)};
    r.s2 = {g(rng), g(rng)};
  }
  return out;
}

TEST(Axis, LocateAndEdges) {
  const Axis a{-1.0, 1.0, 4};
  EXPECT_EQ(a.locate(-1.0), 0);
  EXPECT_EQ(a.locate(-0.51), 0);
  EXPECT_EQ(a.locate(-0.5), 1);
  EXPECT_EQ(a.locate(0.99), 3);
  EXPECT_EQ(a.locate(1.0), -1);
  EXPECT_EQ(a.locate(-1.01), -1);
  EXPECT_EQ(a.locate(std::nan("")), -1);
  EXPECT_DOUBLE_EQ(a.center(0), -0.75);
  EXPECT_DOUBLE_EQ(a.edge(4), 1.0);
}

TEST(Histogram2D, EdgesIncreasingAndCountsConserved) {
  Histogram2D h(Quad::kX1, Quad::kP1, Axis{-2, 2, 16}, Axis{-1, 3, 8});
  const auto ex = h.edges_x();
  ASSERT_EQ(ex.size(), 17u);
  for (std::size_t k = 1; k < ex.size(); ++k) EXPECT_GT(ex[k], ex[k - 1]);
  EXPECT_EQ(h.edges_y().size(), 9u);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.5);
  for (int k = 0; k < 10000; ++k) h.fill(g(rng), g(rng));
  std::uint64_t total = 0;
  for (auto c : h.counts()) total += c;
  EXPECT_EQ(total + h.overflow(), h.n_total());
  EXPECT_EQ(h.n_total(), 10000u);
  EXPECT_GT(h.overflow(), 0u);
}

TEST(Histogram2D, MergeRejectsMismatchedAxes) {
  Histogram2D a(Quad::kX1, Quad::kP1, Axis{-2, 2, 16}, Axis{-2, 2, 16});
  Histogram2D b(Quad::kX1, Quad::kP1, Axis{-2, 2, 8}, Axis{-2, 2, 16});
  EXPECT_THROW(a.merge(b), Error);
  Histogram2D c(Quad::kX1, Quad::kP2, Axis{-2, 2, 16}, Axis{-2, 2, 16});
  EXPECT_THROW(a.merge(c), Error);
}

TEST(HistogramSet, EmptyRecords) {
  const HistogramSet s = accumulate_histograms({}, Binning::symmetric(3.0, 32));
  ASSERT_EQ(s.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(s[k].n_total(), 0u);
    for (auto c : s[k].counts()) EXPECT_EQ(c, 0u);
  }
}

TEST(HistogramSet, SingleRecordAtBinCenter) {
  const Binning b = Binning::symmetric(4.0, 8);
  const double c = b.axes[0].center(5);
  const MeasurementRecord r{{c, -c}, {b.axes[2].center(2), b.axes[3].center(7)}};
  const std::vector<MeasurementRecord> recs = {r};
  const HistogramSet s = accumulate_histograms(recs, b);
  const auto q = measured_quadratures(r);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [qa, qb] = HistogramSet::kPairs[k];
    const Histogram2D& h = s[k];
    EXPECT_EQ(h.label_x(), qa);
    EXPECT_EQ(h.label_y(), qb);
    std::uint64_t total = 0;
    for (auto cnt : h.counts()) total += cnt;
    EXPECT_EQ(total, 1u);
    EXPECT_EQ(h.count(h.x().locate(q[index(qa)]), h.y().locate(q[index(qb)])), 1u);
  }
  EXPECT_EQ(&s.pair(Quad::kP1, Quad::kP2), &s[5]);
  EXPECT_EQ(&s.pair(Quad::kX2, Quad::kX1), &s[4]);
}

TEST(HistogramSet, MergeIsBinExactAssociativeAndCommutative) {
  const auto recs = noise_records(80'000, 3);
  const Binning b = Binning::from_prefix(std::span(recs).first(10'000));
  const HistogramSet whole = accumulate_histograms(recs, b);
  std::vector<HistogramSet> shards;
  for (int k = 0; k < 8; ++k) shards.push_back(accumulate_histograms(std::span(recs).subspan(k * 10'000, 10'000), b));
  HistogramSet left(b);
  for (const auto& s : shards) left.merge(s);
  HistogramSet right(b);
  for (auto it = shards.rbegin(); it != shards.rend(); ++it) right.merge(*it);
  HistogramSet pairs = shards[0];
  HistogramSet tail = shards[1];
  for (int k = 2; k < 8; ++k) tail.merge(shards[k]);
  pairs.merge(tail);
  EXPECT_TRUE(left == whole);
  EXPECT_TRUE(right == whole);
  EXPECT_TRUE(pairs == whole);
}

TEST(HistogramSet, PumpOffIsCircular) {
  const auto recs = noise_records(1'000'000, 4, std::sqrt(35.0));
  const HistogramSet s = accumulate_histograms(recs, Binning::from_prefix(std::span(recs).first(10'000)));
  const HistogramMoments m = moments_from_histogram(s.pair(Quad::kX1, Quad::kP1));
  EXPECT_NEAR(m.var_x / m.var_y, 1.0, 0.01);
}

TEST(Binning, FromPrefixSpansSixSigma) {
  const auto recs = noise_records(10'000, 5, 2.0);
  const Binning b = Binning::from_prefix(recs, 6.0, 128);
  for (const Axis& a : b.axes) {
    EXPECT_EQ(a.bins, 128);
    EXPECT_NEAR(a.hi - a.lo, 24.0, 1.0);
  }
}

TEST(HistogramMoments, SingleBinClampsVariance) {
  Histogram2D h(Quad::kX1, Quad::kP1, Axis{0, 4, 4}, Axis{0, 4, 4});
  for (int k = 0; k < 10; ++k) h.fill(1.2, 2.7);
  const HistogramMoments m = moments_from_histogram(h);
  EXPECT_DOUBLE_EQ(m.mean_x, 1.5);
  EXPECT_DOUBLE_EQ(m.mean_y, 2.5);
  EXPECT_EQ(m.var_x, 0.0);
  EXPECT_EQ(m.var_y, 0.0);
  EXPECT_EQ(m.cov_xy, 0.0);
}

TEST(HistogramMoments, TwoPointMass) {
  // Both points sit on bin centers +-a; the correction subtracts w^2/12.
  const double a = 1.25, w = 0.5;
  Histogram2D h(Quad::kX1, Quad::kX2, Axis{-2, 2, 8}, Axis{-2, 2, 8});
  for (int k = 0; k < 50; ++k) {
    h.fill(a, a);
    h.fill(-a, -a);
  }
  const HistogramMoments m = moments_from_histogram(h);
  EXPECT_NEAR(m.var_x, a * a - w * w / 12, 1e-12);
  EXPECT_NEAR(m.cov_xy, a * a, 1e-12);
  EXPECT_NEAR(m.mean_x, 0.0, 1e-12);
}

TEST(HistogramMoments, OverflowAndEmpty) {
  Histogram2D h(Quad::kX1, Quad::kP1, Axis{-1, 1, 4}, Axis{-1, 1, 4});
  for (int k = 0; k < 100; ++k) h.fill(0.1, 0.1);
  h.fill(5, 0);
  EXPECT_NO_THROW(moments_from_histogram(h));
  h.fill(5, 0);
  try {
    moments_from_histogram(h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRangeTooSmall);
  }
  Histogram2D empty(Quad::kX1, Quad::kP1, Axis{-1, 1, 4}, Axis{-1, 1, 4});
  EXPECT_THROW(moments_from_histogram(empty), Error);
}

TEST(HistogramMoments, SheppardRecoversVarianceAtCoarseBinning) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.3, 1.0);
  // Bin width sigma/5 with an offset grid.
  Histogram2D h(Quad::kX1, Quad::kP1, Axis{-6.07, 6.93, 65}, Axis{-6.07, 6.93, 65});
  double s = 0, s2 = 0;
  const int n = 1'000'000;
  for (int k = 0; k < n; ++k) {
    const double x = g(rng), y = g(rng);
    h.fill(x, y);
    s += x;
    s2 += x * x;
  }
  const double direct = s2 / n - (s / n) * (s / n);
  const HistogramMoments m = moments_from_histogram(h);
  EXPECT_NEAR(m.var_x / direct, 1.0, 0.003);
}

TEST(MomentPaths, HistogramAgreesWithStreaming) {
  // Correlated quadratures at the scale of real records.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<MeasurementRecord> recs(500'000);
  for (auto& r : recs) {
    const double c = 2 * g(rng), d = 2 * g(rng);
    r.s1 = {6 * g(rng) + c, 6 * g(rng) + d};
    r.s2 = {6 * g(rng) + c, 6 * g(rng) - d};
  }
  const HistogramSet hs = accumulate_histograms(recs, Binning::from_prefix(std::span(recs).first(10'000)));
  const MomentSet a = moments_from_histograms(hs);
  StreamingMoments sm;
  sm.add(recs);
  const MomentSet b = sm.moments();
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const double scale = std::sqrt(b.cov(i, i) * b.cov(j, j));
      EXPECT_LE(std::abs(a.cov(i, j) - b.cov(i, j)), 0.005 * std::max(std::abs(b.cov(i, j)), 0.0) + 1e-3 * scale)
          << i << "," << j;
    }
  }
  EXPECT_EQ(a.n, recs.size());
}

TEST(StreamingMoments, MergeMatchesSequential) {
  const auto recs = noise_records(10'000, 9);
  StreamingMoments all;
  all.add(recs);
  StreamingMoments a, b, c;
  a.add(std::span(recs).first(3'000));
  b.add(std::span(recs).subspan(3'000, 5'000));
  c.add(std::span(recs).subspan(8'000));
  a.merge(b);
  a.merge(c);
  const MomentSet x = all.moments(), y = a.moments();
  EXPECT_EQ(x.n, y.n);
  EXPECT_LE((x.cov - y.cov).cwiseAbs().maxCoeff(), 1e-12 * x.cov.cwiseAbs().maxCoeff());
  EXPECT_LE((x.mean - y.mean).cwiseAbs().maxCoeff(), 1e-12);
  StreamingMoments empty;
  a.merge(empty);
  EXPECT_EQ(a.count(), 10'000u);
  empty.merge(all);
  EXPECT_LE((empty.moments().cov - x.cov).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace jpatomo
