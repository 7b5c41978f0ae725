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

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "jpatomo/error.h"
#include "jpatomo/rng.h"

namespace jpatomo {

namespace {

using Complex = std::complex<double>;

constexpr std::uint64_t kPumpOnDomain = 0x70756d702d6f6eULL;
constexpr std::uint64_t kPumpOffDomain = 0x70756d702d6f6666ULL;

double norm2(std::span<const Complex> f, const FilterSpec& spec) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += std::norm(f[k]) * spec.quadrature_weight(k);
  return acc;
}

void check_channel(std::span<const Complex> f, const FilterSpec& spec, const char* name) {
  if (f.size() != spec.size()) {
    throw Error(ErrorCode::kInvalidGrid, std::string(name) + " has the wrong number of weights");
  }
  for (const auto& w : f) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw Error(ErrorCode::kInvalidInput, std::string(name) + " has non-finite weights");
    }
  }
  if (f[spec.center()] != Complex(0.0, 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must vanish at the pump bin");
  }
  const double n = norm2(f, spec);
  if (std::abs(n - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " is not normalized (sum |f|^2 dDelta = " + std::to_string(n) + ")");
  }
}

std::vector<Complex> mirror(std::span<const Complex> f) { return {f.rbegin(), f.rend()}; }

}  // namespace

FilterSpec::FilterSpec(double offset, double spacing, std::vector<Complex> f1)
    : offset_(offset), spacing_(spacing), f1_(std::move(f1)) {
  if (f1_.size() < 3 || f1_.size() % 2 == 0) {
    throw Error(ErrorCode::kInvalidGrid, "filter grid needs an odd number (>= 3) of points");
  }
  if (!(spacing_ > 0) || !std::isfinite(spacing_)) {
    throw Error(ErrorCode::kInvalidGrid, "filter grid spacing must be positive");
  }
  f2_ = mirror(f1_);
  check_channel(f1_, *this, "f1");
  check_channel(f2_, *this, "f2");
}

FilterSpec FilterSpec::with_channel2(std::vector<Complex> f2) const {
  FilterSpec out;
  out.offset_ = offset_;
  out.spacing_ = spacing_;
  out.f1_ = f1_;
  out.f2_ = std::move(f2);
  check_channel(out.f2_, out, "f2");
  return out;
}

bool FilterSpec::is_mirror_symmetric() const {
  const std::size_t n = size();
  for (std::size_t k = 0; k < n; ++k) {
    if (f2_[k] != f1_[n - 1 - k]) return false;
  }
  return true;
}

FilterSpec design_filter(double offset, FilterShape shape, double width, int grid_points,
                         std::optional<double> half_span) {
  if (!(offset > 0) || !std::isfinite(offset)) {
    throw Error(ErrorCode::kInvalidArgument, "filter offset must be > 0");
  }
  if (!(width > 0) || !std::isfinite(width)) {
    throw Error(ErrorCode::kInvalidArgument, "filter width must be > 0");
  }
  if (grid_points < 5 || grid_points % 2 == 0) {
    throw Error(ErrorCode::kInvalidGrid, "grid_points must be odd and >= 5");
  }
  const double required = offset + 3 * width;
  const double span = half_span.value_or(required);
  if (span < required * (1 - 1e-12)) {
    throw Error(ErrorCode::kInvalidGrid, "grid half-span " + std::to_string(span) +
                                             " is narrower than offset + 3 width = " + std::to_string(required));
  }
  const int half = (grid_points - 1) / 2;
  const double h = span / half;
  std::vector<Complex> f1(grid_points, 0.0);
  const double notch_sigma = width / 20;
  int support = 0;
  for (int k = 0; k < grid_points; ++k) {
    const int j = k - half;
    if (j == 0) continue;  // pump bin
    const double d = j * h;
    const double u = d - offset;
    if (std::abs(u) > width / 2 * (1 + 1e-12)) continue;
    double w = 1.0;
    if (shape == FilterShape::kRaisedCosineNotch) {
      w = 0.5 * (1 + std::cos(2 * std::numbers::pi * u / width));
      w *= 1 - std::exp(-d * d / (2 * notch_sigma * notch_sigma));
    }
    if (w > 0) ++support;
    f1[k] = w;
  }
  if (support < 4) {
    throw Error(ErrorCode::kInvalidGrid, "grid too coarse: only " + std::to_string(support) +
                                             " points inside the passband");
  }
  double n = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double tw = (k == 0 || k == grid_points - 1) ? h / 2 : h;
    n += std::norm(f1[k]) * tw;
  }
  const double scale = 1 / std::sqrt(n);
  for (auto& w : f1) w *= scale;
  return FilterSpec(offset, h, std::move(f1));
}

double predicted_r(const FilterSpec& filter, const GainFn& gain_fn) {
  const auto f1 = filter.f1();
  double integral = 0.0;
  for (std::size_t k = 0; k < filter.size(); ++k) {
    if (f1[k] == Complex(0.0, 0.0)) continue;
    integral += std::norm(f1[k]) * gain_fn(filter.delta(k)) * filter.quadrature_weight(k);
  }
  if (integral < 1 - 1e-9) {
    throw Error(ErrorCode::kInternalConsistency,
                "integral |f1|^2 G = " + std::to_string(integral) + " < 1; gain below unity or filter not normalized");
  }
  return std::acosh(std::sqrt(std::max(integral, 1.0)));
}

double predicted_r(const FilterSpec& filter, const GainProfile& profile) {
  return predicted_r(filter, [&](double d) { return gain(d, profile); });
}

GaussianState output_two_mode_state(const GainFn& gain_fn, const FilterSpec& filter, double input_thermal) {
  if (!(input_thermal >= 0)) throw Error(ErrorCode::kInvalidArgument, "input_thermal must be >= 0");
  if (!filter.is_mirror_symmetric()) {
    throw Error(ErrorCode::kUnsupportedFilter, "output_two_mode_state needs f2(Delta) = f1(-Delta)");
  }
  const std::size_t n = filter.size();
  std::vector<double> a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = gain_fn(filter.delta(k));
    if (!(g >= 1)) throw Error(ErrorCode::kInvalidArgument, "gain must be >= 1 on the filter grid");
    a[k] = std::sqrt(g);
    b[k] = std::sqrt(g - 1);
  }
  // Discrete modes: b_i = sum_k w_ik (A_k a_k + B_k a_{-k}^dag), w = f sqrt(weight).
  std::array<std::vector<Complex>, 2> w;
  const std::array<std::span<const Complex>, 2> f = {filter.f1(), filter.f2()};
  for (int i = 0; i < 2; ++i) {
    w[i].resize(n);
    for (std::size_t k = 0; k < n; ++k) w[i][k] = f[i][k] * std::sqrt(filter.quadrature_weight(k));
  }
  const double nbar = input_thermal;
  Eigen::Matrix2cd normal = Eigen::Matrix2cd::Zero();     // <b_i^dag b_j>
  Eigen::Matrix2cd anomalous = Eigen::Matrix2cd::Zero();  // <b_i b_j>
  Eigen::Matrix2cd commutator = Eigen::Matrix2cd::Zero(); // [b_i, b_j^dag]
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t mk = n - 1 - k;
        normal(i, j) += std::conj(w[i][k]) * w[j][k] * (a[k] * a[k] * nbar + b[k] * b[k] * (nbar + 1));
        anomalous(i, j) += w[i][k] * w[j][mk] * (a[k] * b[mk] * (nbar + 1) + b[k] * a[mk] * nbar);
        commutator(i, j) += w[i][k] * std::conj(w[j][k]) * (a[k] * a[k] - b[k] * b[k]);
      }
    }
  }
  // x = (b + b^dag)/2, p = (b - b^dag)/(2i): coefficients of b and b^dag.
  using namespace std::complex_literals;
  const Complex coef_b[2] = {0.5, -0.5i};
  const Complex coef_bdag[2] = {0.5, 0.5i};
  Eigen::Matrix4d cov;
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      const int i = u / 2, j = v / 2, qu = u % 2, qv = v % 2;
      const Complex bb = anomalous(i, j);
      const Complex bbd = normal(j, i) + commutator(i, j);
      const Complex bdb = normal(i, j);
      const Complex bdbd = std::conj(anomalous(j, i));
      const Complex e = coef_b[qu] * coef_b[qv] * bb + coef_b[qu] * coef_bdag[qv] * bbd +
                        coef_bdag[qu] * coef_b[qv] * bdb + coef_bdag[qu] * coef_bdag[qv] * bdbd;
      cov(u, v) = e.real();
    }
  }
  cov = (0.5 * (cov + cov.transpose())).eval();
  return GaussianState(Eigen::VectorXd::Zero(4), Eigen::MatrixXd(cov));
}

GaussianState output_two_mode_state(const GainProfile& profile, const FilterSpec& filter, double input_thermal) {
  return output_two_mode_state([&](double d) { return gain(d, profile); }, filter, input_thermal);
}

void DetectionConfig::validate() const {
  if (!(noise_ch1() >= 0) || !(noise_ch2() >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "n_noise must be >= 0");
  }
  if (!(gain_ch1 > 0) || !(gain_ch2 > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "channel gains must be > 0");
  }
  if (!(sample_period > 0)) throw Error(ErrorCode::kInvalidArgument, "sample_period must be > 0");
}

RecordSource::RecordSource(const GaussianState& state, const DetectionConfig& config, std::uint64_t seed,
                           bool pump_on)
    : sampler_(pump_on ? state : vacuum_state(2)),
      noise_sd1_(std::sqrt((2 * config.noise_ch1() + 1) / 4)),
      noise_sd2_(std::sqrt((2 * config.noise_ch2() + 1) / 4)),
      gain1_(config.gain_ch1),
      gain2_(config.gain_ch2),
      seed_(seed),
      domain_(pump_on ? kPumpOnDomain : kPumpOffDomain) {
  config.validate();
  if (state.n_modes() != 2) throw Error(ErrorCode::kInvalidArgument, "measure needs a two-mode state");
}

void RecordSource::fill_block(std::size_t block, std::span<MeasurementRecord> out) const {
  auto engine = block_engine(seed_, block, domain_);
  std::normal_distribution<double> normal;
  double q[4];
  for (auto& rec : out) {
    sampler_.draw(engine, normal, q);
    const double xh1 = noise_sd1_ * normal(engine);
    const double ph1 = noise_sd1_ * normal(engine);
    const double xh2 = noise_sd2_ * normal(engine);
    const double ph2 = noise_sd2_ * normal(engine);
    rec.s1 = gain1_ * Complex(q[0] + xh1, q[1] - ph1);
    rec.s2 = gain2_ * Complex(q[2] + xh2, q[3] - ph2);
  }
}

std::vector<MeasurementRecord> measure(const GaussianState& state, const DetectionConfig& config,
                                       std::size_t n, std::uint64_t seed, bool pump_on, unsigned threads) {
  const RecordSource source(state, config, seed, pump_on);
  std::vector<MeasurementRecord> out(n);
  parallel_blocks(block_count(n), threads, [&](std::size_t block) {
    const std::size_t begin = block * kBlockSize;
    const std::size_t len = std::min(kBlockSize, n - begin);
    source.fill_block(block, std::span<MeasurementRecord>(out).subspan(begin, len));
  });
  return out;
}

}  // namespace jpatomo
