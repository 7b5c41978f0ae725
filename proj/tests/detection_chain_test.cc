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

#include "jpatomo/detection_chain.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace jpatomo {
namespace {

constexpr double kOffset = angular(5e6);

GainProfile default_profile() { return gain_profile(PumpConfig{}, DeviceParams{}); }

Eigen::Matrix4d oracle_covariance(const FilterSpec& filter, const GainFn& g, double nbar) {
  std::vector<double> gains(filter.size()), w1(filter.size()), w2(filter.size());
  for (std::size_t k = 0; k < filter.size(); ++k) {
    gains[k] = g(filter.delta(k));
    w1[k] = filter.f1()[k].real() * std::sqrt(filter.quadrature_weight(k));
    w2[k] = filter.f2()[k].real() * std::sqrt(filter.quadrature_weight(k));
  }
  return oracle::pairwise_filtered_covariance(gains, w1, w2, nbar);
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(DesignFilter, NormalizationNotchAndMirror) {
  for (FilterShape shape : {FilterShape::kBoxcarNotch, FilterShape::kRaisedCosineNotch}) {
    for (double width : {angular(1e6), angular(5e6), angular(12e6)}) {
      const FilterSpec f = design_filter(kOffset, shape, width, 2001);
      double n1 = 0, n2 = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        n1 += std::norm(f.f1()[k]) * f.quadrature_weight(k);
        n2 += std::norm(f.f2()[k]) * f.quadrature_weight(k);
      }
      EXPECT_NEAR(n1, 1.0, 1e-10);
      EXPECT_NEAR(n2, 1.0, 1e-10);
      EXPECT_DOUBLE_EQ(f.delta(f.center()), 0.0);
      EXPECT_EQ(f.f1()[f.center()], std::complex<double>(0.0));
      EXPECT_EQ(f.f2()[f.center()], std::complex<double>(0.0));
      double mirror = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        mirror = std::max(mirror, std::abs(f.f2()[k] - f.f1()[f.size() - 1 - k]));
      }
      EXPECT_EQ(mirror, 0.0);
      EXPECT_TRUE(f.is_mirror_symmetric());
    }
  }
}

TEST(DesignFilter, BoxcarSupport) {
  const double width = angular(2e6);
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, width, 1001);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const bool inside = std::abs(f.delta(k) - kOffset) <= width / 2 * (1 + 1e-9);
    if (inside) {
      EXPECT_GT(std::abs(f.f1()[k]), 0) << k;
    } else {
      EXPECT_EQ(std::abs(f.f1()[k]), 0) << k;
    }
  }
}

TEST(DesignFilter, RejectsNarrowOrCoarseGrids) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternalConsistency;
  };
  EXPECT_EQ(code_of([] { design_filter(kOffset, FilterShape::kBoxcarNotch, angular(2e6), 401, angular(8e6)); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { design_filter(kOffset, FilterShape::kBoxcarNotch, angular(2e6), 400); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { design_filter(kOffset, FilterShape::kBoxcarNotch, angular(0.01e6), 11); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { design_filter(kOffset, FilterShape::kBoxcarNotch, -1.0, 401); }),
            ErrorCode::kInvalidArgument);
}

TEST(FilterSpec, RejectsBadWeights) {
  std::vector<std::complex<double>> w(5, 0.0);
  w[3] = 1.0;  // spacing 1 gives unit norm
  EXPECT_NO_THROW(FilterSpec(1.0, 1.0, w));
  w[2] = 0.5;  // pump bin
  EXPECT_THROW(FilterSpec(1.0, 1.0, w), Error);
  w[2] = 0;
  w[3] = 2.0;
  EXPECT_THROW(FilterSpec(1.0, 1.0, w), Error);
  EXPECT_THROW(FilterSpec(1.0, 1.0, std::vector<std::complex<double>>(4, 0.0)), Error);
}

TEST(PredictedR, UnitGainIsZero) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kRaisedCosineNotch, angular(4e6), 801);
  EXPECT_NEAR(predicted_r(f, [](double) { return 1.0; }), 0.0, 1e-5);
  EXPECT_GE(predicted_r(f, [](double) { return 1.0; }), 0.0);
}

TEST(PredictedR, FlatGainFour) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(3e6), 1201);
  EXPECT_NEAR(predicted_r(f, [](double) { return 4.0; }), 1.31695789692481671, 1e-12);
}

TEST(PredictedR, BelowUnitGainIsInconsistent) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(3e6), 1201);
  try {
    predicted_r(f, [](double) { return 0.5; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternalConsistency);
  }
}

TEST(PredictedR, PassbandReachingThePumpSqueezesMore) {
  const GainProfile g = default_profile();
  const double wide = predicted_r(design_filter(kOffset, FilterShape::kBoxcarNotch, angular(8e6), 2001), g);
  const double narrow = predicted_r(design_filter(kOffset, FilterShape::kBoxcarNotch, angular(2e6), 2001), g);
  EXPECT_GT(wide, narrow);
  EXPECT_LT(wide, std::acosh(std::sqrt(g.g0)));
}

TEST(OutputState, UnitGainIsVacuum) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(4e6), 801);
  const GaussianState s = output_two_mode_state([](double) { return 1.0; }, f);
  EXPECT_LT(max_abs_diff(s.cov(), vacuum_state(2).cov()), 1e-12);
  EXPECT_TRUE(s.mean().isZero());
}

TEST(OutputState, FlatGainIsExactTwoModeSqueeze) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(3e6), 1201);
  const GainFn flat = [](double) { return 4.0; };
  const double r = predicted_r(f, flat);
  const GaussianState s = output_two_mode_state(flat, f);
  EXPECT_LT(max_abs_diff(s.cov(), tms_theory_covariance(r, 0).cov()), 1e-12);
  EXPECT_LT(max_abs_diff(s.cov(), oracle_covariance(f, flat, 0)), 1e-12);
  const double var_minus = s.cov()(0, 0) + s.cov()(2, 2) - 2 * s.cov()(0, 2);
  EXPECT_NEAR(var_minus, std::exp(-2 * r) / 2, 1e-12);
}

TEST(OutputState, LorentzianGainMatchesPairwiseOracle) {
  const GainProfile g = default_profile();
  const GainFn fn = [&](double d) { return gain(d, g); };
  for (FilterShape shape : {FilterShape::kBoxcarNotch, FilterShape::kRaisedCosineNotch}) {
    for (double nbar : {0.0, 0.05}) {
      const FilterSpec f = design_filter(kOffset, shape, angular(5.5e6), 601);
      const GaussianState s = output_two_mode_state(g, f, nbar);
      EXPECT_LT(max_abs_diff(s.cov(), oracle_covariance(f, fn, nbar)), 1e-9);
    }
  }
}

TEST(OutputState, DiagonalMatchesPredictedR) {
  const GainProfile g = default_profile();
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(5.5e6), 1201);
  const double r = predicted_r(f, g);
  const GaussianState s = output_two_mode_state(g, f);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.cov()(k, k), std::cosh(2 * r) / 4, 1e-9 * std::cosh(2 * r));
  // Non-flat gain: cross terms fall short of the ideal sinh(2r)/4 but the
  // state stays a valid pure-or-mixed quantum state.
  EXPECT_LE(s.cov()(0, 2), std::sinh(2 * r) / 4 * (1 + 1e-12));
  EXPECT_TRUE(is_physical(s, 1e-9));
  EXPECT_NEAR(s.cov()(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(s.cov()(0, 3), 0.0, 1e-12);
}

TEST(OutputState, ThermalInputScalesFlatState) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(3e6), 801);
  const GainFn flat = [](double) { return 4.0; };
  const GaussianState s0 = output_two_mode_state(flat, f, 0.0);
  const GaussianState s1 = output_two_mode_state(flat, f, 0.05);
  EXPECT_LT(max_abs_diff(s1.cov(), 1.1 * s0.cov()), 1e-12);
}

TEST(OutputState, NonMirrorFilterUnsupported) {
  const FilterSpec f = design_filter(kOffset, FilterShape::kBoxcarNotch, angular(3e6), 801);
  std::vector<std::complex<double>> f2(f.f1().begin(), f.f1().end());
  const FilterSpec g = f.with_channel2(f2);
  EXPECT_FALSE(g.is_mirror_symmetric());
  try {
    output_two_mode_state([](double) { return 4.0; }, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFilter);
  }
}

struct RecordMoments {
  // Columns: re_s1, im_s1, re_s2, im_s2.
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
};

RecordMoments record_moments(const std::vector<MeasurementRecord>& recs) {
  RecordMoments m;
  for (const auto& r : recs) {
    const Eigen::Vector4d v(r.s1.real(), r.s1.imag(), r.s2.real(), r.s2.imag());
    m.mean += v;
    m.cov += v * v.transpose();
  }
  const double n = static_cast<double>(recs.size());
  m.mean /= n;
  m.cov = m.cov / n - m.mean * m.mean.transpose();
  return m;
}

TEST(Measure, VacuumWithoutNoise) {
  DetectionConfig cfg;
  cfg.n_noise = 0;
  cfg.gain_ch2 = 1;
  const std::size_t n = 400'000;
  const RecordMoments m = record_moments(measure(vacuum_state(2), cfg, n, 5, true));
  const double tol = 5 * 0.5 * std::sqrt(2.0 / n);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(m.cov(k, k), 0.5, tol);
}

TEST(Measure, PumpOffVarianceAndIndependence) {
  DetectionConfig cfg;
  cfg.gain_ch2 = 1;
  const std::size_t n = 400'000;
  const RecordMoments m = record_moments(measure(tms_theory_covariance(1.78, 0), cfg, n, 6, false));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(m.cov(k, k), 35.0, 5 * 35.0 * std::sqrt(2.0 / n));
  const double cross_sd = 35.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) EXPECT_NEAR(m.cov(i, j), 0.0, 5 * cross_sd) << i << j;
  // Circular symmetry per channel.
  EXPECT_NEAR(m.cov(0, 0) - m.cov(1, 1), 0.0, 5 * 35.0 * std::sqrt(4.0 / n));
  EXPECT_NEAR(m.cov(2, 2) - m.cov(3, 3), 0.0, 5 * 35.0 * std::sqrt(4.0 / n));
}

TEST(Measure, PumpOnSignalPlusNoise) {
  DetectionConfig cfg;
  cfg.gain_ch2 = 1;
  const std::size_t n = 400'000;
  const GaussianState s = tms_theory_covariance(1.78, 0);
  const RecordMoments m = record_moments(measure(s, cfg, n, 8, true));
  const double expected = 39.1489544962276;
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(m.cov(k, k), expected, 5 * expected * std::sqrt(2.0 / n));
  // Signal correlations pass through; the h^dag conjugation leaves x1x2 and p1p2 signs.
  const double sd = std::sqrt((expected * expected + s.cov()(0, 2) * s.cov()(0, 2)) / n);
  EXPECT_NEAR(m.cov(0, 2), s.cov()(0, 2), 5 * sd);
  EXPECT_NEAR(m.cov(1, 3), s.cov()(1, 3), 5 * sd);
}

TEST(Measure, ChannelGainScalesMoments) {
  DetectionConfig a;
  a.gain_ch2 = 1;
  DetectionConfig b = a;
  b.gain_ch1 = 1.7;
  const std::size_t n = 100'000;
  const GaussianState s = tms_theory_covariance(1.0, 0);
  const auto ra = measure(s, a, n, 9, true);
  const auto rb = measure(s, b, n, 9, true);
  // Same seed: records differ only by the deterministic channel-1 factor.
  for (std::size_t k = 0; k < n; k += 997) {
    EXPECT_NEAR(rb[k].s1.real(), 1.7 * ra[k].s1.real(), 1e-12 * std::abs(rb[k].s1.real()) + 1e-15);
    EXPECT_NEAR(rb[k].s1.imag(), 1.7 * ra[k].s1.imag(), 1e-12 * std::abs(rb[k].s1.imag()) + 1e-15);
    EXPECT_EQ(rb[k].s2, ra[k].s2);
  }
  const RecordMoments ma = record_moments(ra), mb = record_moments(rb);
  EXPECT_NEAR(mb.cov(0, 0) / ma.cov(0, 0), 1.7 * 1.7, 1e-9);
}

TEST(Measure, DeterministicAcrossThreadCounts) {
  const DetectionConfig cfg;
  const GaussianState s = tms_theory_covariance(1.78, 0.3);
  const auto a = measure(s, cfg, 150'000, 77, true, 1);
  const auto b = measure(s, cfg, 150'000, 77, true, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    ASSERT_EQ(a[k].s1, b[k].s1);
    ASSERT_EQ(a[k].s2, b[k].s2);
  }
  const auto off = measure(s, cfg, 10, 77, false, 1);
  EXPECT_NE(off[0].s1, a[0].s1);
}

TEST(Measure, PerChannelNoiseOverride) {
  DetectionConfig cfg;
  cfg.gain_ch2 = 1;
  cfg.n_noise_ch2 = 10.0;
  const std::size_t n = 200'000;
  const RecordMoments m = record_moments(measure(vacuum_state(2), cfg, n, 12, false));
  EXPECT_NEAR(m.cov(2, 2), 5.5, 5 * 5.5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m.cov(0, 0), 35.0, 5 * 35.0 * std::sqrt(2.0 / n));
}

TEST(Measure, InvalidConfig) {
  DetectionConfig cfg;
  cfg.gain_ch1 = 0;
  EXPECT_THROW(measure(vacuum_state(2), cfg, 1, 1, true), Error);
  cfg.gain_ch1 = 1;
  cfg.n_noise = -1;
  EXPECT_THROW(measure(vacuum_state(2), cfg, 1, 1, true), Error);
  EXPECT_THROW(measure(vacuum_state(1), DetectionConfig{}, 1, 1, true), Error);
}

}  // namespace
}  // namespace jpatomo
