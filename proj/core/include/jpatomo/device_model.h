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

#ifndef JPATOMO_DEVICE_MODEL_H_
#define JPATOMO_DEVICE_MODEL_H_

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "jpatomo/error.h"

namespace jpatomo {

// All frequencies are angular (rad/s) unless a name says _hz.

constexpr double angular(double hz) { return 2 * std::numbers::pi * hz; }
constexpr double to_hz(double omega) { return omega / (2 * std::numbers::pi); }

/// Flux-tunable Kerr resonator terminated by a SQUID.
struct DeviceParams {
  double omega_r_max = angular(6.9e9);
  double e_j_max_hz = 6.1e12;
  /// Kerr constant K, negative. K/omega_r_max ~ -2.8e-7.
  double kerr = angular(-2.8e-7 * 6.9e9);
  double kappa = angular(25e6);
  double gamma_i = angular(2e6);
  /// SQUID share of the total inductance at zero flux, in (0, 1).
  double participation = 0.02;
  /// c in sqrt(G0) * B = c * kappa.
  double gain_bandwidth_constant = 1.0;

  void validate() const;
};

struct PumpConfig {
  double omega_p = angular(6.8834e9);
  double power_dbm = -80.8;
  double critical_omega_p = angular(6.882e9);
  double critical_power_dbm = -80.6;

  void validate() const;
};

/// Phenomenological gain map: an anchor point with a known peak gain, and a
/// detuning penalty that lowers the gain as the pump moves away from the
/// critical frequency. See gain_profile().
struct GainMapModel {
  double anchor_omega_p = angular(6.8834e9);
  double anchor_power_dbm = -80.8;
  double anchor_g0 = 100.0;
  /// Equivalent power back-off (dB) per kappa^2 of pump detuning from the
  /// critical frequency.
  double detuning_db_per_kappa2 = 10.0;

  void validate() const;
};

/// Lorentzian gain profile around the pump.
struct GainProfile {
  double g0 = 1.0;
  /// Full width at half maximum of G - 1, rad/s.
  double bandwidth = 1.0;
  double omega_p = 0.0;

  /// Profile with peak gain g0 and the bandwidth fixed by the device's
  /// gain-bandwidth product.
  static GainProfile from_peak_gain(double g0, const DeviceParams& device, double omega_p);

  void validate() const;
};

/// Resonance frequency at flux `phi` (units of the flux quantum), using a
/// lumped participation-ratio model
///   omega_r(phi) = omega_0 / (1 + p0 / |cos(pi phi)|),
/// with omega_0 and p0 fixed by omega_r(0) = omega_r_max and
/// participation = p0 / (1 + p0). Throws kDivergentInductance when
/// |cos(pi phi)| <= 1e-6.
double resonance_frequency(double phi, const DeviceParams& params);

/// Linear-regime reflection coefficient at drive frequency omega and flux phi:
///   Gamma = ((gamma_i - kappa)/2 - i d) / ((gamma_i + kappa)/2 - i d),
/// d = omega - omega_r(phi). An overcoupled resonator gives Gamma(0) < 0.
std::complex<double> reflection(double omega, const DeviceParams& params, double phi = 0.0);

/// Peak gain and bandwidth for a pump below the critical power. The map is
/// anchored at `model`'s operating point:
///   sqrt(G0) - 1 = (sqrt(G_anchor) - 1) * D_anchor / D,
///   D = (P_crit - P) + s * ((omega_p - omega_crit) / kappa)^2,
/// so G0 -> 1 far below threshold and grows toward the critical point. B then
/// follows from sqrt(G0) B = c kappa. Throws kUnstableRegime at or above the
/// critical power.
GainProfile gain_profile(const PumpConfig& pump, const DeviceParams& params,
                         const GainMapModel& model = {});

/// G_delta = 1 + (G0 - 1) / (1 + (2 delta / B)^2).
double gain(double delta, const GainProfile& profile);

struct AmpCoefficients {
  std::complex<double> a;
  std::complex<double> b;
};

/// Scattering coefficients of b_out(d) = A b_in(d) + B b_in^dag(-d), taken
/// real and positive with |A|^2 = G, |B|^2 = G - 1.
AmpCoefficients amp_coefficients(double delta, const GainProfile& profile);

/// Output power spectral density on vacuum input, in photons:
/// (G_delta - 1) + n_noise.
double psd(double delta, const GainProfile& profile, double n_noise);

struct PsdSample {
  double delta = 0.0;
  double s = 0.0;
};

struct PsdFit {
  double g0 = 1.0;
  double bandwidth = 0.0;
  double n_noise = 0.0;
  double g0_error = 0.0;
  double bandwidth_error = 0.0;
  double n_noise_error = 0.0;
  double sum_squared_residuals = 0.0;
  int iterations = 0;
};

/// Raised by fit_psd on constant data. The data still pins the trivial
/// solution (no gain, offset = the constant), which is carried along.
class FitDegenerateError : public Error {
 public:
  FitDegenerateError(double level, const std::string& what)
      : Error(ErrorCode::kFitDegenerate, what), level_(level) {}

  double n_noise() const noexcept { return level_; }
  double g0() const noexcept { return 1.0; }

 private:
  double level_;
};

/// Least-squares fit of S(d) = (g0 - 1) / (1 + (2 d / B)^2) + n_noise with
/// g0 >= 1. Needs at least 10 points, which should span a few bandwidths.
PsdFit fit_psd(std::span<const PsdSample> samples);

}  // namespace jpatomo

#endif  // JPATOMO_DEVICE_MODEL_H_
