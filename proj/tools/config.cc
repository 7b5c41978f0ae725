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

#include "config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace jpatomo::app {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Input iterator that publishes how many bytes the parser has consumed, so
// SAX callbacks can be mapped back to source lines.
class TrackedIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackedIterator(const char* p, const char* base, std::size_t* consumed) : p_(p), base_(base), consumed_(consumed) {}

  reference operator*() const { return *p_; }
  TrackedIterator& operator++() {
    ++p_;
    if (consumed_) *consumed_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  TrackedIterator operator++(int) {
    TrackedIterator t = *this;
    ++*this;
    return t;
  }
  bool operator==(const TrackedIterator& o) const { return p_ == o.p_; }
  bool operator!=(const TrackedIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_;
  const char* base_;
  std::size_t* consumed_;
};

class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    starts_.push_back(0);
    for (std::size_t k = 0; k < text.size(); ++k) {
      if (text[k] == '\n') starts_.push_back(k + 1);
    }
  }
  int line_of(std::size_t offset) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    return static_cast<int>(it - starts_.begin());
  }

 private:
  std::vector<std::size_t> starts_;
};

// Builds the DOM and records the line of every object key by JSON path.
class LineTrackingSax : public nlohmann::json_sax<json> {
 public:
  LineTrackingSax(json& root, const std::size_t* consumed, const LineIndex& index,
                  std::map<std::string, int>* key_lines)
      : dom_(root, true), consumed_(consumed), index_(index), key_lines_(key_lines) {}

  bool null() override { return value_done(dom_.null()); }
  bool boolean(bool v) override { return value_done(dom_.boolean(v)); }
  bool number_integer(number_integer_t v) override { return value_done(dom_.number_integer(v)); }
  bool number_unsigned(number_unsigned_t v) override { return value_done(dom_.number_unsigned(v)); }
  bool number_float(number_float_t v, const string_t& s) override { return value_done(dom_.number_float(v, s)); }
  bool string(string_t& v) override { return value_done(dom_.string(v)); }
  bool binary(binary_t& v) override { return value_done(dom_.binary(v)); }

  bool start_object(std::size_t n) override {
    path_.push_back({true, {}, 0});
    return dom_.start_object(n);
  }
  bool key(string_t& k) override {
    path_.back().key = k;
    (*key_lines_)[current_path()] = index_.line_of(*consumed_);
    return dom_.key(k);
  }
  bool end_object() override {
    path_.pop_back();
    return value_done(dom_.end_object());
  }
  bool start_array(std::size_t n) override {
    path_.push_back({false, {}, 0});
    return dom_.start_array(n);
  }
  bool end_array() override {
    path_.pop_back();
    return value_done(dom_.end_array());
  }
  bool parse_error(std::size_t position, const std::string& token, const nlohmann::detail::exception& ex) override {
    return dom_.parse_error(position, token, ex);
  }

 private:
  struct Frame {
    bool object;
    std::string key;
    std::size_t index;
  };

  bool value_done(bool ok) {
    if (!path_.empty() && !path_.back().object) ++path_.back().index;
    return ok;
  }
  std::string current_path() const {
    std::string p;
    for (const auto& f : path_) p += "/" + (f.object ? f.key : std::to_string(f.index));
    return p;
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  const std::size_t* consumed_;
  const LineIndex& index_;
  std::map<std::string, int>* key_lines_;
  std::vector<Frame> path_;
};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

class Reader {
 public:
  explicit Reader(const std::map<std::string, int>& lines) : lines_(lines) {}

  [[noreturn]] void fail_at(const std::string& path, const std::string& msg) const {
    const auto it = lines_.find(path);
    const std::string where = it != lines_.end() ? "line " + std::to_string(it->second) + ": " : "";
    fail(where + (path.empty() ? "/" : path) + ": " + msg);
  }

  // Returns the named child object of `parent` (or nullptr if absent), after
  // checking it only has keys from `allowed`.
  const json* section(const json& parent, const std::string& parent_path, const std::string& name,
                      std::initializer_list<std::string_view> allowed) const {
    const std::string path = parent_path + "/" + name;
    const auto it = parent.find(name);
    if (it == parent.end() || it->is_null()) return nullptr;
    check_object(*it, path, allowed);
    return &*it;
  }

  void check_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) const {
    if (!j.is_object()) fail_at(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        fail_at(path + "/" + k, "unknown key (allowed: " + list + ")");
      }
    }
  }

  void number(const json* obj, const std::string& path, const char* key, double& out) const {
    if (!obj) return;
    const auto it = obj->find(key);
    if (it == obj->end()) return;
    if (!it->is_number()) fail_at(path + "/" + key, "expected a number");
    out = it->get<double>();
    if (!std::isfinite(out)) fail_at(path + "/" + key, "must be finite");
  }

  void optional_number(const json* obj, const std::string& path, const char* key, std::optional<double>& out) const {
    if (!obj) return;
    const auto it = obj->find(key);
    if (it == obj->end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    double v = 0;
    number(obj, path, key, v);
    out = v;
  }

  template <typename Int>
  void integer(const json* obj, const std::string& path, const char* key, Int& out) const {
    if (!obj) return;
    const auto it = obj->find(key);
    if (it == obj->end()) return;
    const std::string p = path + "/" + key;
    if (it->is_number_unsigned()) {
      const auto v = it->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) fail_at(p, "out of range");
      out = static_cast<Int>(v);
    } else if (it->is_number_integer()) {
      const auto v = it->get<std::int64_t>();
      if (v < static_cast<std::int64_t>(std::numeric_limits<Int>::min()) ||
          (v > 0 && static_cast<std::uint64_t>(v) > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))) {
        fail_at(p, "out of range");
      }
      out = static_cast<Int>(v);
    } else if (it->is_number_float()) {
      // Accept exponent notation such as 1e7 when the value is integral.
      const double v = it->get<double>();
      if (!(v == std::floor(v)) || v < static_cast<double>(std::numeric_limits<Int>::min()) ||
          v > static_cast<double>(std::numeric_limits<Int>::max())) {
        fail_at(p, "expected an integer");
      }
      out = static_cast<Int>(v);
    } else {
      fail_at(p, "expected an integer");
    }
  }

  void boolean(const json* obj, const std::string& path, const char* key, bool& out) const {
    if (!obj) return;
    const auto it = obj->find(key);
    if (it == obj->end()) return;
    if (!it->is_boolean()) fail_at(path + "/" + key, "expected true or false");
    out = it->get<bool>();
  }

  template <typename Enum>
  void choice(const json* obj, const std::string& path, const char* key, Enum& out,
              std::initializer_list<Enum> options) const {
    if (!obj) return;
    const auto it = obj->find(key);
    if (it == obj->end()) return;
    std::string list;
    for (Enum e : options) list += (list.empty() ? "" : ", ") + std::string(to_string(e));
    if (!it->is_string()) fail_at(path + "/" + key, "expected one of: " + list);
    const auto s = it->get<std::string>();
    for (Enum e : options) {
      if (to_string(e) == s) {
        out = e;
        return;
      }
    }
    fail_at(path + "/" + key, "'" + s + "' is not one of: " + list);
  }

 private:
  const std::map<std::string, int>& lines_;
};

// Re-raises module validation failures as configuration errors for `path`.
template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail(path + ": " + e.what());
  }
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail(path + ": " + what);
}

ordered_json optional_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::string_view to_string(FilterShape shape) {
  return shape == FilterShape::kBoxcarNotch ? "boxcar-notch" : "raised-cosine-notch";
}

std::string_view to_string(SourceKind kind) { return kind == SourceKind::kInjected ? "injected" : "device"; }

std::string_view to_string(RecordExport mode) {
  switch (mode) {
    case RecordExport::kCsv:
      return "csv";
    case RecordExport::kBinary:
      return "binary";
    default:
      return "none";
  }
}

DeviceParams DeviceSection::params() const {
  DeviceParams p;
  p.omega_r_max = angular(omega_r_max_hz);
  p.e_j_max_hz = e_j_max_hz;
  p.kerr = angular(kerr_hz);
  p.kappa = angular(kappa_hz);
  p.gamma_i = angular(gamma_i_hz);
  p.participation = participation;
  p.gain_bandwidth_constant = gain_bandwidth_constant;
  return p;
}

PumpConfig PumpSection::params() const {
  return {angular(omega_p_hz), power_dbm, angular(critical_omega_p_hz), critical_power_dbm};
}

GainMapModel GainMapSection::params() const {
  return {angular(anchor_omega_p_hz), anchor_power_dbm, anchor_g0, detuning_db_per_kappa2};
}

FilterSpec FilterSection::design() const {
  std::optional<double> span;
  if (half_span_hz) span = angular(*half_span_hz);
  return design_filter(angular(offset_hz), shape, angular(width_hz), grid_points, span);
}

DetectionConfig DetectionSection::params() const {
  DetectionConfig c;
  c.n_noise = n_noise;
  c.n_noise_ch1 = n_noise_ch1;
  c.n_noise_ch2 = n_noise_ch2;
  c.gain_ch1 = gain_ch1;
  c.gain_ch2 = gain_ch2;
  c.sample_period = sample_period_s;
  c.lo_offset = angular(lo_offset_hz);
  return c;
}

void ExperimentConfig::validate() const {
  checked("/device", [&] { device.params().validate(); });
  checked("/pump", [&] { pump.params().validate(); });
  checked("/gain_map", [&] { gain_map.params().validate(); });
  checked("/filter", [&] { filter.design(); });
  checked("/detection", [&] { detection.params().validate(); });
  require(source.r >= 0, "/source/r", "must be >= 0");
  require(source.n_add >= 0, "/source/n_add", "must be >= 0");
  require(source.input_thermal >= 0, "/source/input_thermal", "must be >= 0");
  require(run.n_records >= 2, "/run/n_records", "must be >= 2");
  require(run.bins >= 2, "/run/bins", "must be >= 2");
  require(run.n_sigma > 0, "/run/n_sigma", "must be > 0");
  require(run.binning_prefix >= 2, "/run/binning_prefix", "must be >= 2");
  const auto& fs = run.flux_sweep;
  require(fs.points >= 2, "/run/flux_sweep/points", "must be >= 2");
  require(fs.phi_min < fs.phi_max, "/run/flux_sweep", "phi_min must be < phi_max");
  require(fs.phi_min > -0.5 && fs.phi_max < 0.5, "/run/flux_sweep", "range must stay inside (-0.5, 0.5)");
  require(run.reflection.points >= 2, "/run/reflection/points", "must be >= 2");
  require(run.reflection.span_hz > 0, "/run/reflection/span_hz", "must be > 0");
  require(std::abs(std::cos(std::numbers::pi * run.reflection.phi)) > 1e-6, "/run/reflection/phi",
          "half flux quantum has no resonance");
  const auto& gm = run.gain_map;
  require(gm.omega_points >= 1 && gm.power_points >= 1, "/run/gain_map", "point counts must be >= 1");
  require(gm.omega_p_min_hz <= gm.omega_p_max_hz, "/run/gain_map", "omega_p_min_hz must be <= omega_p_max_hz");
  require(gm.power_min_dbm <= gm.power_max_dbm, "/run/gain_map", "power_min_dbm must be <= power_max_dbm");
  require(run.psd.points >= 10, "/run/psd/points", "must be >= 10");
  require(run.psd.span_bandwidths >= 3, "/run/psd/span_bandwidths", "must be >= 3 bandwidths");
  require(run.psd.noise_sigma >= 0, "/run/psd/noise_sigma", "must be >= 0");
  require(run.wigner.points >= 2, "/run/wigner/points", "must be >= 2");
  require(!run.wigner.half_range || *run.wigner.half_range > 0, "/run/wigner/half_range", "must be > 0");
}

AcquisitionOptions ExperimentConfig::acquisition() const {
  AcquisitionOptions o;
  o.n_records = run.n_records;
  o.seed = run.seed;
  o.bins = run.bins;
  o.n_sigma = run.n_sigma;
  o.binning_prefix = run.binning_prefix;
  o.threads = run.threads;
  return o;
}

ExperimentConfig parse_config(std::string_view text) {
  const LineIndex index(text);
  std::map<std::string, int> key_lines;
  json root;
  std::size_t consumed = 0;
  {
    LineTrackingSax sax(root, &consumed, index, &key_lines);
    const TrackedIterator first(text.data(), text.data(), &consumed);
    const TrackedIterator last(text.data() + text.size(), text.data(), nullptr);
    try {
      json::sax_parse(first, last, &sax);
    } catch (const json::exception& e) {
      fail("line " + std::to_string(index.line_of(consumed > 0 ? consumed - 1 : 0)) + ": malformed JSON: " + e.what());
    }
  }

  const Reader rd(key_lines);
  rd.check_object(root, "", {"schema", "device", "pump", "gain_map", "filter", "detection", "source", "run"});
  const auto schema = root.find("schema");
  if (schema == root.end()) rd.fail_at("", "missing \"schema\" (expected \"" + std::string(kConfigSchema) + "\")");
  if (!schema->is_string() || schema->get<std::string>() != kConfigSchema) {
    rd.fail_at("/schema", "unsupported schema (expected \"" + std::string(kConfigSchema) + "\")");
  }

  ExperimentConfig c;
  if (const json* d = rd.section(root, "", "device",
                                 {"omega_r_max_hz", "e_j_max_hz", "kerr_hz", "kappa_hz", "gamma_i_hz", "participation",
                                  "gain_bandwidth_constant"})) {
    const std::string p = "/device";
    rd.number(d, p, "omega_r_max_hz", c.device.omega_r_max_hz);
    rd.number(d, p, "e_j_max_hz", c.device.e_j_max_hz);
    rd.number(d, p, "kerr_hz", c.device.kerr_hz);
    rd.number(d, p, "kappa_hz", c.device.kappa_hz);
    rd.number(d, p, "gamma_i_hz", c.device.gamma_i_hz);
    rd.number(d, p, "participation", c.device.participation);
    rd.number(d, p, "gain_bandwidth_constant", c.device.gain_bandwidth_constant);
  }
  if (const json* d = rd.section(root, "", "pump",
                                 {"omega_p_hz", "power_dbm", "critical_omega_p_hz", "critical_power_dbm"})) {
    const std::string p = "/pump";
    rd.number(d, p, "omega_p_hz", c.pump.omega_p_hz);
    rd.number(d, p, "power_dbm", c.pump.power_dbm);
    rd.number(d, p, "critical_omega_p_hz", c.pump.critical_omega_p_hz);
    rd.number(d, p, "critical_power_dbm", c.pump.critical_power_dbm);
  }
  if (const json* d = rd.section(root, "", "gain_map",
                                 {"anchor_omega_p_hz", "anchor_power_dbm", "anchor_g0", "detuning_db_per_kappa2"})) {
    const std::string p = "/gain_map";
    rd.number(d, p, "anchor_omega_p_hz", c.gain_map.anchor_omega_p_hz);
    rd.number(d, p, "anchor_power_dbm", c.gain_map.anchor_power_dbm);
    rd.number(d, p, "anchor_g0", c.gain_map.anchor_g0);
    rd.number(d, p, "detuning_db_per_kappa2", c.gain_map.detuning_db_per_kappa2);
  }
  if (const json* d = rd.section(root, "", "filter", {"offset_hz", "shape", "width_hz", "grid_points", "half_span_hz"})) {
    const std::string p = "/filter";
    rd.number(d, p, "offset_hz", c.filter.offset_hz);
    rd.choice(d, p, "shape", c.filter.shape, {FilterShape::kBoxcarNotch, FilterShape::kRaisedCosineNotch});
    rd.number(d, p, "width_hz", c.filter.width_hz);
    rd.integer(d, p, "grid_points", c.filter.grid_points);
    rd.optional_number(d, p, "half_span_hz", c.filter.half_span_hz);
  }
  if (const json* d = rd.section(root, "", "detection",
                                 {"n_noise", "n_noise_ch1", "n_noise_ch2", "gain_ch1", "gain_ch2", "sample_period_s",
                                  "lo_offset_hz"})) {
    const std::string p = "/detection";
    rd.number(d, p, "n_noise", c.detection.n_noise);
    rd.optional_number(d, p, "n_noise_ch1", c.detection.n_noise_ch1);
    rd.optional_number(d, p, "n_noise_ch2", c.detection.n_noise_ch2);
    rd.number(d, p, "gain_ch1", c.detection.gain_ch1);
    rd.number(d, p, "gain_ch2", c.detection.gain_ch2);
    rd.number(d, p, "sample_period_s", c.detection.sample_period_s);
    rd.number(d, p, "lo_offset_hz", c.detection.lo_offset_hz);
  }
  if (const json* d = rd.section(root, "", "source", {"kind", "r", "n_add", "input_thermal"})) {
    const std::string p = "/source";
    rd.choice(d, p, "kind", c.source.kind, {SourceKind::kInjected, SourceKind::kDevice});
    rd.number(d, p, "r", c.source.r);
    rd.number(d, p, "n_add", c.source.n_add);
    rd.number(d, p, "input_thermal", c.source.input_thermal);
  }
  if (const json* d = rd.section(root, "", "run",
                                 {"n_records", "seed", "bins", "n_sigma", "binning_prefix", "threads", "export_records",
                                  "export_records_limit", "flux_sweep", "reflection", "gain_map", "psd", "wigner"})) {
    const std::string p = "/run";
    auto& r = c.run;
    rd.integer(d, p, "n_records", r.n_records);
    rd.integer(d, p, "seed", r.seed);
    rd.integer(d, p, "bins", r.bins);
    rd.number(d, p, "n_sigma", r.n_sigma);
    rd.integer(d, p, "binning_prefix", r.binning_prefix);
    rd.integer(d, p, "threads", r.threads);
    rd.choice(d, p, "export_records", r.export_records,
              {RecordExport::kNone, RecordExport::kCsv, RecordExport::kBinary});
    rd.integer(d, p, "export_records_limit", r.export_records_limit);
    if (const json* s = rd.section(*d, p, "flux_sweep", {"phi_min", "phi_max", "points"})) {
      const std::string q = p + "/flux_sweep";
      rd.number(s, q, "phi_min", r.flux_sweep.phi_min);
      rd.number(s, q, "phi_max", r.flux_sweep.phi_max);
      rd.integer(s, q, "points", r.flux_sweep.points);
    }
    if (const json* s = rd.section(*d, p, "reflection", {"phi", "span_hz", "points"})) {
      const std::string q = p + "/reflection";
      rd.number(s, q, "phi", r.reflection.phi);
      rd.number(s, q, "span_hz", r.reflection.span_hz);
      rd.integer(s, q, "points", r.reflection.points);
    }
    if (const json* s = rd.section(*d, p, "gain_map",
                                   {"omega_p_min_hz", "omega_p_max_hz", "omega_points", "power_min_dbm",
                                    "power_max_dbm", "power_points"})) {
      const std::string q = p + "/gain_map";
      rd.number(s, q, "omega_p_min_hz", r.gain_map.omega_p_min_hz);
      rd.number(s, q, "omega_p_max_hz", r.gain_map.omega_p_max_hz);
      rd.integer(s, q, "omega_points", r.gain_map.omega_points);
      rd.number(s, q, "power_min_dbm", r.gain_map.power_min_dbm);
      rd.number(s, q, "power_max_dbm", r.gain_map.power_max_dbm);
      rd.integer(s, q, "power_points", r.gain_map.power_points);
    }
    if (const json* s = rd.section(*d, p, "psd", {"points", "span_bandwidths", "noise_sigma"})) {
      const std::string q = p + "/psd";
      rd.integer(s, q, "points", r.psd.points);
      rd.number(s, q, "span_bandwidths", r.psd.span_bandwidths);
      rd.number(s, q, "noise_sigma", r.psd.noise_sigma);
    }
    if (const json* s = rd.section(*d, p, "wigner", {"points", "half_range"})) {
      const std::string q = p + "/wigner";
      rd.integer(s, q, "points", r.wigner.points);
      rd.optional_number(s, q, "half_range", r.wigner.half_range);
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kConfig) throw;
    throw Error(ErrorCode::kConfig, path + ": " + std::string(e.what()).substr(to_string(ErrorCode::kConfig).size() + 2));
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  ordered_json j;
  j["schema"] = kConfigSchema;
  j["device"] = {{"omega_r_max_hz", c.device.omega_r_max_hz},
                 {"e_j_max_hz", c.device.e_j_max_hz},
                 {"kerr_hz", c.device.kerr_hz},
                 {"kappa_hz", c.device.kappa_hz},
                 {"gamma_i_hz", c.device.gamma_i_hz},
                 {"participation", c.device.participation},
                 {"gain_bandwidth_constant", c.device.gain_bandwidth_constant}};
  j["pump"] = {{"omega_p_hz", c.pump.omega_p_hz},
               {"power_dbm", c.pump.power_dbm},
               {"critical_omega_p_hz", c.pump.critical_omega_p_hz},
               {"critical_power_dbm", c.pump.critical_power_dbm}};
  j["gain_map"] = {{"anchor_omega_p_hz", c.gain_map.anchor_omega_p_hz},
                   {"anchor_power_dbm", c.gain_map.anchor_power_dbm},
                   {"anchor_g0", c.gain_map.anchor_g0},
                   {"detuning_db_per_kappa2", c.gain_map.detuning_db_per_kappa2}};
  j["filter"] = {{"offset_hz", c.filter.offset_hz},
                 {"shape", to_string(c.filter.shape)},
                 {"width_hz", c.filter.width_hz},
                 {"grid_points", c.filter.grid_points},
                 {"half_span_hz", optional_json(c.filter.half_span_hz)}};
  j["detection"] = {{"n_noise", c.detection.n_noise},
                    {"n_noise_ch1", optional_json(c.detection.n_noise_ch1)},
                    {"n_noise_ch2", optional_json(c.detection.n_noise_ch2)},
                    {"gain_ch1", c.detection.gain_ch1},
                    {"gain_ch2", c.detection.gain_ch2},
                    {"sample_period_s", c.detection.sample_period_s},
                    {"lo_offset_hz", c.detection.lo_offset_hz}};
  j["source"] = {{"kind", to_string(c.source.kind)},
                 {"r", c.source.r},
                 {"n_add", c.source.n_add},
                 {"input_thermal", c.source.input_thermal}};
  const auto& r = c.run;
  j["run"] = {{"n_records", r.n_records},
              {"seed", r.seed},
              {"bins", r.bins},
              {"n_sigma", r.n_sigma},
              {"binning_prefix", r.binning_prefix},
              {"threads", r.threads},
              {"export_records", to_string(r.export_records)},
              {"export_records_limit", r.export_records_limit}};
  j["run"]["flux_sweep"] = {
      {"phi_min", r.flux_sweep.phi_min}, {"phi_max", r.flux_sweep.phi_max}, {"points", r.flux_sweep.points}};
  j["run"]["reflection"] = {
      {"phi", r.reflection.phi}, {"span_hz", r.reflection.span_hz}, {"points", r.reflection.points}};
  j["run"]["gain_map"] = {{"omega_p_min_hz", r.gain_map.omega_p_min_hz}, {"omega_p_max_hz", r.gain_map.omega_p_max_hz},
                          {"omega_points", r.gain_map.omega_points},     {"power_min_dbm", r.gain_map.power_min_dbm},
                          {"power_max_dbm", r.gain_map.power_max_dbm},   {"power_points", r.gain_map.power_points}};
  j["run"]["psd"] = {
      {"points", r.psd.points}, {"span_bandwidths", r.psd.span_bandwidths}, {"noise_sigma", r.psd.noise_sigma}};
  j["run"]["wigner"] = {{"points", r.wigner.points}, {"half_range", optional_json(r.wigner.half_range)}};
  return j.dump(2) + "\n";
}

}  // namespace jpatomo::app
