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

#include "scenarios.h"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "jpatomo/export.h"
#include "jpatomo/format.h"
#include "jpatomo/record_io.h"
#include "jpatomo/rng.h"

namespace jpatomo::app {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kPsdNoiseDomain = 0x7073642d6e6f6973ULL;

constexpr std::array<std::pair<Scenario, std::string_view>, 5> kScenarioNames = {{
    {Scenario::kFluxSweep, "flux-sweep"},
    {Scenario::kReflection, "reflection"},
    {Scenario::kGainMap, "gain-map"},
    {Scenario::kPsd, "psd"},
    {Scenario::kTomography, "tomography"},
}};

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw Error(ErrorCode::kIo, "cannot create output directory '" + dir_.string() + "': " + ec.message());
    }
  }

  void write(const std::string& name, const std::string& data, std::vector<OutputFile>* record) const {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open '" + p.string() + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.close();
    if (!out) throw Error(ErrorCode::kIo, "failed writing '" + p.string() + "'");
    if (record) record->push_back({name, sha256_hex(data), data.size()});
  }

 private:
  fs::path dir_;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double lerp_point(double lo, double hi, int k, int n) { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); }

ScenarioReport flux_sweep(const ExperimentConfig& c, const OutputDir& out) {
  const DeviceParams dev = c.device.params();
  const auto& s = c.run.flux_sweep;
  std::string csv = "phi,omega_r_hz\n";
  bool monotone = true;
  double last = 0;
  for (int k = 0; k < s.points; ++k) {
    const double phi = lerp_point(s.phi_min, s.phi_max, k, s.points);
    const double hz = to_hz(resonance_frequency(phi, dev));
    if (k > 0 && phi > 0 && hz >= last) monotone = false;
    last = hz;
    csv += format_double(phi) + "," + format_double(hz) + "\n";
  }
  ScenarioReport rep;
  out.write("flux_sweep.csv", csv, &rep.files);
  ordered_json r;
  r["omega_r_max_hz"] = to_hz(resonance_frequency(0.0, dev));
  r["decreasing_for_positive_phi"] = monotone;
  rep.results_json = r.dump();
  return rep;
}

ScenarioReport reflection_trace(const ExperimentConfig& c, const OutputDir& out) {
  const DeviceParams dev = c.device.params();
  const auto& s = c.run.reflection;
  const double w_r = resonance_frequency(s.phi, dev);
  std::string csv = "detuning_hz,re_gamma,im_gamma,abs_gamma\n";
  for (int k = 0; k < s.points; ++k) {
    const double d_hz = lerp_point(-s.span_hz / 2, s.span_hz / 2, k, s.points);
    const std::complex<double> g = reflection(w_r + angular(d_hz), dev, s.phi);
    csv += format_double(d_hz) + "," + format_double(g.real()) + "," + format_double(g.imag()) + "," +
           format_double(std::abs(g)) + "\n";
  }
  ScenarioReport rep;
  out.write("reflection.csv", csv, &rep.files);
  const std::complex<double> g0 = reflection(w_r, dev, s.phi);
  ordered_json r;
  r["omega_r_hz"] = to_hz(w_r);
  r["gamma_on_resonance"] = {g0.real(), g0.imag()};
  rep.results_json = r.dump();
  return rep;
}

ScenarioReport gain_map(const ExperimentConfig& c, const OutputDir& out) {
  const DeviceParams dev = c.device.params();
  const GainMapModel model = c.gain_map.params();
  const auto& s = c.run.gain_map;
  std::string csv = "omega_p_hz,power_dbm,stable,g0,bandwidth_hz\n";
  for (int i = 0; i < s.omega_points; ++i) {
    for (int j = 0; j < s.power_points; ++j) {
      PumpConfig pump = c.pump.params();
      const double f = lerp_point(s.omega_p_min_hz, s.omega_p_max_hz, i, s.omega_points);
      pump.omega_p = angular(f);
      pump.power_dbm = lerp_point(s.power_min_dbm, s.power_max_dbm, j, s.power_points);
      csv += format_double(f) + "," + format_double(pump.power_dbm) + ",";
      if (pump.power_dbm >= pump.critical_power_dbm) {
        csv += "0,,\n";
        continue;
      }
      const GainProfile g = gain_profile(pump, dev, model);
      csv += "1," + format_double(g.g0) + "," + format_double(to_hz(g.bandwidth)) + "\n";
    }
  }
  ScenarioReport rep;
  out.write("gain_map.csv", csv, &rep.files);
  const GainProfile op = gain_profile(c.pump.params(), dev, model);
  ordered_json r;
  r["operating_point"] = {{"omega_p_hz", c.pump.omega_p_hz},
                          {"power_dbm", c.pump.power_dbm},
                          {"g0", op.g0},
                          {"bandwidth_hz", to_hz(op.bandwidth)},
                          {"gain_bandwidth_product_over_kappa", std::sqrt(op.g0) * op.bandwidth / dev.kappa}};
  rep.results_json = r.dump();
  return rep;
}

ScenarioReport psd_scenario(const ExperimentConfig& c, const OutputDir& out) {
  const DeviceParams dev = c.device.params();
  const GainProfile profile = gain_profile(c.pump.params(), dev, c.gain_map.params());
  const auto& s = c.run.psd;
  const double n_noise = c.detection.n_noise;
  auto engine = block_engine(c.run.seed, 0, kPsdNoiseDomain);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<PsdSample> samples;
  std::string csv = "detuning_hz,s_model,s_measured\n";
  const double span = s.span_bandwidths * profile.bandwidth;
  for (int k = 0; k < s.points; ++k) {
    const double d = lerp_point(-span, span, k, s.points);
    const double model = psd(d, profile, n_noise);
    const double measured = model + s.noise_sigma * noise(engine);
    samples.push_back({d, measured});
    csv += format_double(to_hz(d)) + "," + format_double(model) + "," + format_double(measured) + "\n";
  }
  const PsdFit fit = fit_psd(samples);

  const FilterSpec filter = c.filter.design();
  std::string fcsv = "detuning_hz,f1,f2,gain\n";
  for (std::size_t k = 0; k < filter.size(); ++k) {
    fcsv += format_double(to_hz(filter.delta(k))) + "," + format_double(filter.f1()[k].real()) + "," +
            format_double(filter.f2()[k].real()) + "," + format_double(gain(filter.delta(k), profile)) + "\n";
  }

  ordered_json j;
  j["truth"] = {{"g0", profile.g0}, {"bandwidth_hz", to_hz(profile.bandwidth)}, {"n_noise", n_noise}};
  j["fit"] = {{"g0", fit.g0},
              {"g0_error", fit.g0_error},
              {"bandwidth_hz", to_hz(fit.bandwidth)},
              {"bandwidth_hz_error", to_hz(fit.bandwidth_error)},
              {"n_noise", fit.n_noise},
              {"n_noise_error", fit.n_noise_error},
              {"sum_squared_residuals", fit.sum_squared_residuals},
              {"iterations", fit.iterations}};
  j["noise_sigma"] = s.noise_sigma;
  j["predicted_r"] = predicted_r(filter, profile);

  ScenarioReport rep;
  out.write("psd.csv", csv, &rep.files);
  out.write("filter.csv", fcsv, &rep.files);
  out.write("psd_fit.json", j.dump(2) + "\n", &rep.files);
  rep.results_json = j.dump();
  return rep;
}

void export_records(const ExperimentConfig& c, const RecordSource& source, const std::string& stem,
                    const OutputDir& out, std::vector<OutputFile>* files) {
  const std::uint64_t limit = c.run.export_records_limit;
  const std::size_t n = static_cast<std::size_t>(limit == 0 ? c.run.n_records : std::min(limit, c.run.n_records));
  std::vector<MeasurementRecord> recs(n);
  for (std::size_t b = 0; b * kBlockSize < n; ++b) {
    const std::size_t begin = b * kBlockSize;
    source.fill_block(b, std::span<MeasurementRecord>(recs).subspan(begin, std::min(kBlockSize, n - begin)));
  }
  std::ostringstream ss(std::ios::binary);
  if (c.run.export_records == RecordExport::kCsv) {
    write_records_csv(ss, recs);
    out.write(stem + ".csv", ss.str(), files);
  } else {
    write_records_binary(ss, recs);
    out.write(stem + ".bin", ss.str(), files);
  }
}

ScenarioReport tomography(const ExperimentConfig& c, const OutputDir& out) {
  const GaussianState state = source_state(c);
  const DetectionConfig det = c.detection.params();
  const TomographyRun run = run_tomography(state, det, c.acquisition());
  WignerGridSpec grid;
  grid.points = c.run.wigner.points;
  grid.half_range = c.run.wigner.half_range;
  const Reconstruction rec = reconstruct(run.v, grid);
  TomographyResult result = summarize(run);
  result.min_uncertainty_eigenvalue = rec.result.min_uncertainty_eigenvalue;
  result.marginally_unphysical = rec.result.marginally_unphysical;

  ScenarioReport rep;
  for (const auto& [label, acq] : {std::pair{"on", &run.on}, std::pair{"off", &run.off}}) {
    for (std::size_t k = 0; k < acq->histograms.size(); ++k) {
      const Histogram2D& h = acq->histograms[k];
      const std::string stem = std::string("hist_pump_") + label + "_" + lower(quad_label(h.label_x())) + "_" +
                               lower(quad_label(h.label_y()));
      out.write(stem + ".csv", histogram_csv(h), &rep.files);
      out.write(stem + ".json", histogram_json(h), &rep.files);
    }
  }
  out.write("tomography.json", tomography_json(result), &rep.files);
  out.write("wigner_x1_p1.csv", wigner_csv(rec.x1p1), &rep.files);
  out.write("wigner_x1_x2.csv", wigner_csv(rec.x1x2), &rep.files);
  out.write("wigner_ideal_x1_x2.csv", wigner_csv(rec.ideal_x1x2), &rep.files);
  if (c.run.export_records != RecordExport::kNone) {
    export_records(c, RecordSource(state, det, c.run.seed, true), "records_pump_on", out, &rep.files);
    export_records(c, RecordSource(state, det, c.run.seed, false), "records_pump_off", out, &rep.files);
  }

  ordered_json r;
  r["source"] = to_string(c.source.kind);
  r["r_fit"] = result.r_fit;
  r["r_fit_pure"] = result.r_fit_pure;
  r["n_add_fit"] = result.n_add_fit;
  r["witness_d"] = result.witness_d;
  r["min_uncertainty_eigenvalue"] = result.min_uncertainty_eigenvalue;
  r["marginally_unphysical"] = result.marginally_unphysical;
  r["scale_factors"] = {result.scale_factors.g1, result.scale_factors.g2};
  r["n_records"] = {{"pump_on", result.n_records_on}, {"pump_off", result.n_records_off}};
  try {
    const GainProfile profile = gain_profile(c.pump.params(), c.device.params(), c.gain_map.params());
    r["predicted_r"] = predicted_r(c.filter.design(), profile);
  } catch (const Error&) {
    r["predicted_r"] = nullptr;
  }
  rep.results_json = r.dump();
  return rep;
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& [k, name] : kScenarioNames) {
    if (k == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [k, n] : kScenarioNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string_view> scenario_names() {
  std::vector<std::string_view> out;
  for (const auto& [k, n] : kScenarioNames) out.push_back(n);
  return out;
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::kIo) return kExitIo;
  if (is_numerical(code)) return kExitNumerical;
  return kExitConfig;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternalConsistency, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

GaussianState source_state(const ExperimentConfig& c) {
  if (c.source.kind == SourceKind::kInjected) return tms_theory_covariance(c.source.r, c.source.n_add);
  const GainProfile profile = gain_profile(c.pump.params(), c.device.params(), c.gain_map.params());
  return output_two_mode_state(profile, c.filter.design(), c.source.input_thermal);
}

ScenarioReport run_scenario(Scenario scenario, const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  const OutputDir out(out_dir);
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioReport rep;
  switch (scenario) {
    case Scenario::kFluxSweep:
      rep = flux_sweep(config, out);
      break;
    case Scenario::kReflection:
      rep = reflection_trace(config, out);
      break;
    case Scenario::kGainMap:
      rep = gain_map(config, out);
      break;
    case Scenario::kPsd:
      rep = psd_scenario(config, out);
      break;
    case Scenario::kTomography:
      rep = tomography(config, out);
      break;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string config_text = serialize_config(config);
  ordered_json m;
  m["schema"] = "jpatomo.manifest/1";
  m["scenario"] = to_string(scenario);
  m["seed"] = config.run.seed;
  m["n_records"] = config.run.n_records;
  m["config_sha256"] = sha256_hex(config_text);
  m["config"] = ordered_json::parse(config_text);
  m["versions"] = {{"jpatomo", kVersion},
                   {"compiler", __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  m["started_utc"] = utc_timestamp(started);
  m["wall_clock_seconds"] = seconds;
  m["threads"] = resolve_threads(config.run.threads);
  ordered_json files = ordered_json::array();
  for (const auto& f : rep.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  m["files"] = files;
  m["results"] = ordered_json::parse(rep.results_json);
  out.write("manifest.json", m.dump(2) + "\n", nullptr);
  return rep;
}

}  // namespace jpatomo::app
