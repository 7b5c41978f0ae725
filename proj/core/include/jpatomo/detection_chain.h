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

#ifndef JPATOMO_DETECTION_CHAIN_H_
#define JPATOMO_DETECTION_CHAIN_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "jpatomo/device_model.h"
#include "jpatomo/gaussian_state.h"

namespace jpatomo {

enum class FilterShape { kBoxcarNotch, kRaisedCosineNotch };

/// Pair of discretized filter functions defining modes b1 (upper sideband)
/// and b2 (lower sideband) on a uniform detuning grid symmetric about the
/// pump. Weights carry units of 1/sqrt(rad/s).
///
/// Invariants (checked on construction): odd grid with Delta = 0 at the
/// center, sum |f|^2 dDelta = 1 for both channels (trapezoidal weights,
/// 1e-10), exact zeros at the pump bin, f2(Delta) == f1(-Delta) bit-exactly.
class FilterSpec {
 public:
  FilterSpec(double offset, double spacing, std::vector<std::complex<double>> f1);

  double offset() const { return offset_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return f1_.size(); }
  std::size_t center() const { return f1_.size() / 2; }
  double delta(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(center())) * spacing_;
  }
  /// Trapezoidal quadrature weight of grid point k.
  double quadrature_weight(std::size_t k) const {
    return (k == 0 || k + 1 == size()) ? spacing_ / 2 : spacing_;
  }
  std::span<const std::complex<double>> f1() const { return f1_; }
  std::span<const std::complex<double>> f2() const { return f2_; }

  /// Replaces channel 2 weights; used to model non-mirror filters.
  FilterSpec with_channel2(std::vector<std::complex<double>> f2) const;
  bool is_mirror_symmetric() const;

 private:
  FilterSpec() = default;

  double offset_ = 0.0;
  double spacing_ = 0.0;
  std::vector<std::complex<double>> f1_;
  std::vector<std::complex<double>> f2_;
};

/// Builds a normalized filter centered at +offset (channel 1) and its mirror
/// at -offset (channel 2). Boxcar: constant on [offset - width/2,
/// offset + width/2]. Raised cosine: (1 + cos(2 pi (Delta - offset) / width))/2
/// on the same support, times the notch factor 1 - exp(-Delta^2 / 2 s^2) with
/// s = width / 20. Both zero the pump bin exactly. The grid has `grid_points`
/// (odd) points spanning +-half_span, defaulting to offset + 3 width; a
/// narrower span or a grid too coarse to resolve the passband throws
/// kInvalidGrid.
FilterSpec design_filter(double offset, FilterShape shape, double width, int grid_points,
                         std::optional<double> half_span = std::nullopt);

using GainFn = std::function<double(double delta)>;

/// Squeezing parameter from cosh^2(r) = integral |f1|^2 G dDelta.
double predicted_r(const FilterSpec& filter, const GainFn& gain_fn);
double predicted_r(const FilterSpec& filter, const GainProfile& profile);

/// Filtered two-mode state of (b1, b2) at the amplifier output for thermal
/// input with input_thermal photons per frequency bin. Every sideband pair
/// (Delta, -Delta) transforms independently under the scattering relation;
/// the filtered second moments are summed over the grid. For a gain that is
/// flat across the passband this is exactly tms_theory_covariance(r, 0) with
/// r = predicted_r; a gain varying across the passband leaves the diagonal at
/// cosh(2r)/4 but lowers the cross-correlations. Throws kUnsupportedFilter
/// for non-mirror filters.
GaussianState output_two_mode_state(const GainFn& gain_fn, const FilterSpec& filter,
                                    double input_thermal = 0.0);
GaussianState output_two_mode_state(const GainProfile& profile, const FilterSpec& filter,
                                    double input_thermal = 0.0);

struct DetectionConfig {
  /// Thermal photon number of the detection noise modes h1, h2.
  double n_noise = 69.0;
  std::optional<double> n_noise_ch1;
  std::optional<double> n_noise_ch2;
  /// Linear voltage scale per quadrature unit.
  double gain_ch1 = 1.0;
  double gain_ch2 = 1.02;
  /// Metadata only; records are drawn directly in the filtered-mode basis.
  double sample_period = 10e-9;
  double lo_offset = angular(5e6);

  double noise_ch1() const { return n_noise_ch1.value_or(n_noise); }
  double noise_ch2() const { return n_noise_ch2.value_or(n_noise); }
  void validate() const;
};

/// One complex sample per channel: S = b + h^dag = X + i P.
struct MeasurementRecord {
  std::complex<double> s1;
  std::complex<double> s2;
};

/// Deterministic generator of heterodyne records. Records are produced in
/// blocks of kBlockSize, each from its own stream, so any subset of blocks
/// can be generated independently and in parallel.
class RecordSource {
 public:
  /// With pump_on == false the signal modes are replaced by vacuum (the
  /// pump-off reference).
  RecordSource(const GaussianState& state, const DetectionConfig& config, std::uint64_t seed, bool pump_on);

  /// Fills records [block * kBlockSize, block * kBlockSize + out.size()).
  void fill_block(std::size_t block, std::span<MeasurementRecord> out) const;

 private:
  GaussianSampler sampler_;
  double noise_sd1_;
  double noise_sd2_;
  double gain1_;
  double gain2_;
  std::uint64_t seed_;
  std::uint64_t domain_;
};

/// n records with noise modes of per-quadrature variance (2 n_noise + 1)/4,
/// s_k = gain_k [(x_b + x_h) + i (p_b - p_h)].
std::vector<MeasurementRecord> measure(const GaussianState& state, const DetectionConfig& config,
                                       std::size_t n, std::uint64_t seed, bool pump_on,
                                       unsigned threads = 0);

}  // namespace jpatomo

#endif  // JPATOMO_DETECTION_CHAIN_H_
