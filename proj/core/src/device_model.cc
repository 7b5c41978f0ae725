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

#include "jpatomo/device_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "jpatomo/levenberg_marquardt.h"

namespace jpatomo {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

double power_distance(double omega_p, double power_dbm, const PumpConfig& pump, double kappa,
                      double db_per_kappa2) {
  const double detuning = (omega_p - pump.critical_omega_p) / kappa;
  return (pump.critical_power_dbm - power_dbm) + db_per_kappa2 * detuning * detuning;
}

}  // namespace

void DeviceParams::validate() const {
  require(omega_r_max > 0, "omega_r_max must be > 0");
  require(kappa > 0, "kappa must be > 0");
  require(gamma_i >= 0, "gamma_i must be >= 0");
  require(kerr < 0, "Kerr constant must be negative");
  require(participation > 0 && participation < 1, "participation must be in (0, 1)");
  require(gain_bandwidth_constant > 0, "gain-bandwidth constant must be > 0");
  require(e_j_max_hz > 0, "E_J,max must be > 0");
}

void PumpConfig::validate() const {
  require(std::isfinite(omega_p) && omega_p > 0, "pump frequency must be > 0");
  require(std::isfinite(power_dbm), "pump power must be finite");
  require(critical_omega_p > 0 && std::isfinite(critical_power_dbm), "critical point must be finite");
}

void GainMapModel::validate() const {
  require(anchor_g0 >= 1, "anchor gain must be >= 1");
  require(detuning_db_per_kappa2 >= 0, "detuning penalty must be >= 0");
  require(anchor_omega_p > 0 && std::isfinite(anchor_power_dbm), "anchor must be finite");
}

void GainProfile::validate() const {
  require(g0 >= 1, "G0 must be >= 1");
  require(bandwidth > 0, "bandwidth must be > 0");
}

GainProfile GainProfile::from_peak_gain(double g0, const DeviceParams& device, double omega_p) {
  GainProfile p{g0, device.gain_bandwidth_constant * device.kappa / std::sqrt(g0), omega_p};
  p.validate();
  return p;
}

double resonance_frequency(double phi, const DeviceParams& params) {
  const double c = std::abs(std::cos(std::numbers::pi * phi));
  if (c <= 1e-6) {
    throw Error(ErrorCode::kDivergentInductance,
                "Josephson inductance diverges at half flux quantum (phi=" + std::to_string(phi) + ")");
  }
  const double p0 = params.participation / (1 - params.participation);
  const double omega0 = params.omega_r_max * (1 + p0);
  return omega0 / (1 + p0 / c);
}

std::complex<double> reflection(double omega, const DeviceParams& params, double phi) {
  using namespace std::complex_literals;
  const double d = omega - resonance_frequency(phi, params);
  const std::complex<double> num = (params.gamma_i - params.kappa) / 2 - 1i * d;
  const std::complex<double> den = (params.gamma_i + params.kappa) / 2 - 1i * d;
  return num / den;
}

GainProfile gain_profile(const PumpConfig& pump, const DeviceParams& params, const GainMapModel& model) {
  params.validate();
  pump.validate();
  model.validate();
  if (pump.power_dbm >= pump.critical_power_dbm) {
    throw Error(ErrorCode::kUnstableRegime, "pump power " + std::to_string(pump.power_dbm) +
                                                " dBm is at or above the critical power " +
                                                std::to_string(pump.critical_power_dbm) + " dBm");
  }
  if (model.anchor_power_dbm >= pump.critical_power_dbm) {
    throw Error(ErrorCode::kUnstableRegime, "gain-map anchor lies above the critical power");
  }
  const double s = model.detuning_db_per_kappa2;
  const double d_anchor = power_distance(model.anchor_omega_p, model.anchor_power_dbm, pump, params.kappa, s);
  const double d = power_distance(pump.omega_p, pump.power_dbm, pump, params.kappa, s);
  const double root_g0 = 1 + (std::sqrt(model.anchor_g0) - 1) * d_anchor / d;
  return GainProfile::from_peak_gain(root_g0 * root_g0, params, pump.omega_p);
}

double gain(double delta, const GainProfile& profile) {
  const double u = 2 * delta / profile.bandwidth;
  return 1 + (profile.g0 - 1) / (1 + u * u);
}

AmpCoefficients amp_coefficients(double delta, const GainProfile& profile) {
  const double g = gain(delta, profile);
  return {std::sqrt(g), std::sqrt(g - 1)};
}

double psd(double delta, const GainProfile& profile, double n_noise) {
  return (gain(delta, profile) - 1) + n_noise;
}

PsdFit fit_psd(std::span<const PsdSample> samples) {
  const int m = static_cast<int>(samples.size());
  if (m < 10) throw Error(ErrorCode::kInvalidArgument, "fit_psd needs at least 10 samples");
  for (const auto& p : samples) {
    if (!std::isfinite(p.delta) || !std::isfinite(p.s)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite PSD sample");
    }
  }
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                      [](const PsdSample& a, const PsdSample& b) { return a.s < b.s; });
  if (hi->s - lo->s <= 1e-14 * std::max(std::abs(hi->s), 1.0)) {
    throw FitDegenerateError(lo->s, "PSD data is constant; Lorentzian parameters are undetermined");
  }

  // Offset from the outer fifth of the detuning range, peak from the maximum.
  std::vector<PsdSample> by_detuning(samples.begin(), samples.end());
  std::sort(by_detuning.begin(), by_detuning.end(),
            [](const PsdSample& a, const PsdSample& b) { return std::abs(a.delta) < std::abs(b.delta); });
  std::vector<double> tail;
  for (std::size_t k = by_detuning.size() * 4 / 5; k < by_detuning.size(); ++k) tail.push_back(by_detuning[k].s);
  std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
  const double n0 = tail[tail.size() / 2];
  const double peak = std::max(hi->s - n0, 1e-12);
  double half_width = 0.0;
  for (const auto& p : samples) {
    if (p.s - n0 >= peak / 2) half_width = std::max(half_width, std::abs(p.delta));
  }
  const double span = std::abs(by_detuning.back().delta);
  if (half_width <= 0) half_width = span / 10;

  const ResidualFn fn = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    const double g0 = q[0], b = q[1], n = q[2];
    for (int i = 0; i < m; ++i) {
      const double d = samples[i].delta;
      const double u = 2 * d / b;
      const double lor = 1 / (1 + u * u);
      r[i] = (g0 - 1) * lor + n - samples[i].s;
      jac(i, 0) = lor;
      jac(i, 1) = (g0 - 1) * lor * lor * 2 * u * u / b;
      jac(i, 2) = 1.0;
    }
  };
  LmOptions options;
  options.lower_bounds = Eigen::Vector3d(1.0, 1e-12 * std::max(span, 1e-300), -1e300);
  const LmResult fit = levenberg_marquardt(fn, Eigen::Vector3d(1 + peak, 2 * half_width, n0), m, options);
  if (!fit.converged) {
    throw Error(ErrorCode::kNoConvergence,
                "PSD fit did not converge in " + std::to_string(fit.iterations) + " iterations");
  }

  PsdFit out;
  out.g0 = fit.params[0];
  out.bandwidth = fit.params[1];
  out.n_noise = fit.params[2];
  out.sum_squared_residuals = fit.sum_squared_residuals;
  out.iterations = fit.iterations;
  const double sigma2 = m > 3 ? fit.sum_squared_residuals / (m - 3) : 0.0;
  out.g0_error = std::sqrt(std::max(fit.inverse_normal(0, 0) * sigma2, 0.0));
  out.bandwidth_error = std::sqrt(std::max(fit.inverse_normal(1, 1) * sigma2, 0.0));
  out.n_noise_error = std::sqrt(std::max(fit.inverse_normal(2, 2) * sigma2, 0.0));
  return out;
}

}  // namespace jpatomo
