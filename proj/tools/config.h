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

#ifndef JPATOMO_TOOLS_CONFIG_H_
#define JPATOMO_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "jpatomo/detection_chain.h"
#include "jpatomo/device_model.h"
#include "jpatomo/tomography.h"

namespace jpatomo::app {

inline constexpr std::string_view kConfigSchema = "jpatomo.experiment/1";

// Frequencies are stored in Hz as written in the file; conversion to rad/s
// happens when module parameters are built, so a parse/serialize round trip
// is exact.

struct DeviceSection {
  double omega_r_max_hz = 6.9e9;
  double e_j_max_hz = 6.1e12;
  double kerr_hz = -1932.0;
  double kappa_hz = 25e6;
  double gamma_i_hz = 2e6;
  double participation = 0.02;
  double gain_bandwidth_constant = 1.0;

  DeviceParams params() const;
  bool operator==(const DeviceSection&) const = default;
};

struct PumpSection {
  double omega_p_hz = 6.8834e9;
  double power_dbm = -80.8;
  double critical_omega_p_hz = 6.882e9;
  double critical_power_dbm = -80.6;

  PumpConfig params() const;
  bool operator==(const PumpSection&) const = default;
};

struct GainMapSection {
  double anchor_omega_p_hz = 6.8834e9;
  double anchor_power_dbm = -80.8;
  double anchor_g0 = 100.0;
  double detuning_db_per_kappa2 = 10.0;

  GainMapModel params() const;
  bool operator==(const GainMapSection&) const = default;
};

struct FilterSection {
  double offset_hz = 5e6;
  FilterShape shape = FilterShape::kBoxcarNotch;
  double width_hz = 5.47e6;
  int grid_points = 4001;
  std::optional<double> half_span_hz;

  FilterSpec design() const;
  bool operator==(const FilterSection&) const = default;
};

struct DetectionSection {
  double n_noise = 69.0;
  std::optional<double> n_noise_ch1;
  std::optional<double> n_noise_ch2;
  double gain_ch1 = 1.0;
  double gain_ch2 = 1.02;
  double sample_period_s = 10e-9;
  double lo_offset_hz = 5e6;

  DetectionConfig params() const;
  bool operator==(const DetectionSection&) const = default;
};

enum class SourceKind {
  /// Two-mode squeezed thermal state with explicit (r, n_add).
  kInjected,
  /// State built from the device gain profile and the designed filter.
  kDevice,
};

struct SourceSection {
  SourceKind kind = SourceKind::kInjected;
  double r = 1.7648;
  double n_add = 0.527;
  double input_thermal = 0.0;

  bool operator==(const SourceSection&) const = default;
};

enum class RecordExport { kNone, kCsv, kBinary };

struct FluxSweepSection {
  double phi_min = 0.0;
  double phi_max = 0.45;
  int points = 91;
  bool operator==(const FluxSweepSection&) const = default;
};

struct ReflectionSection {
  double phi = 0.0;
  double span_hz = 200e6;
  int points = 401;
  bool operator==(const ReflectionSection&) const = default;
};

struct GainMapScanSection {
  double omega_p_min_hz = 6.870e9;
  double omega_p_max_hz = 6.895e9;
  int omega_points = 51;
  double power_min_dbm = -86.0;
  double power_max_dbm = -80.65;
  int power_points = 51;
  bool operator==(const GainMapScanSection&) const = default;
};

struct PsdSection {
  int points = 200;
  /// Detuning range +-span_bandwidths * B.
  double span_bandwidths = 4.0;
  double noise_sigma = 0.5;
  bool operator==(const PsdSection&) const = default;
};

struct WignerSection {
  int points = 101;
  std::optional<double> half_range;
  bool operator==(const WignerSection&) const = default;
};

struct RunSection {
  std::uint64_t n_records = 10'000'000;
  std::uint64_t seed = 20120326;
  int bins = 128;
  double n_sigma = 6.0;
  std::uint64_t binning_prefix = 10'000;
  unsigned threads = 0;
  RecordExport export_records = RecordExport::kNone;
  /// Number of records per pump setting written when exporting; 0 = all.
  std::uint64_t export_records_limit = 0;
  FluxSweepSection flux_sweep;
  ReflectionSection reflection;
  GainMapScanSection gain_map;
  PsdSection psd;
  WignerSection wigner;

  bool operator==(const RunSection&) const = default;
};

struct ExperimentConfig {
  DeviceSection device;
  PumpSection pump;
  GainMapSection gain_map;
  FilterSection filter;
  DetectionSection detection;
  SourceSection source;
  RunSection run;

  /// Cross-section checks (module invariants); throws Error(kConfig).
  void validate() const;
  AcquisitionOptions acquisition() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates a configuration. Missing keys take their defaults;
/// unknown keys, wrong types and invalid values raise Error(kConfig) with the
/// JSON path and source line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON text (every key present, fixed order).
std::string serialize_config(const ExperimentConfig& config);

std::string_view to_string(FilterShape shape);
std::string_view to_string(SourceKind kind);
std::string_view to_string(RecordExport mode);

}  // namespace jpatomo::app

#endif  // JPATOMO_TOOLS_CONFIG_H_
