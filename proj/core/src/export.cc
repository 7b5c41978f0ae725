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

#include "jpatomo/export.h"

#include <cctype>
#include <sstream>

#include "jpatomo/format.h"
#include "json.hpp"

namespace jpatomo {

namespace {

std::string lower(std::string_view label) {
  std::string s(label);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string histogram_csv(const Histogram2D& h) {
  std::ostringstream out;
  out << "# axis_x=" << quad_label(h.label_x()) << " axis_y=" << quad_label(h.label_y())
      << " n_total=" << h.n_total() << " overflow=" << h.overflow() << '\n';
  out << "ix,iy,x_lo,x_hi,y_lo,y_hi,count\n";
  const auto ex = h.edges_x();
  const auto ey = h.edges_y();
  for (int i = 0; i < h.x().bins; ++i) {
    for (int j = 0; j < h.y().bins; ++j) {
      out << i << ',' << j << ',' << format_double(ex[i]) << ',' << format_double(ex[i + 1]) << ','
          << format_double(ey[j]) << ',' << format_double(ey[j + 1]) << ',' << h.count(i, j) << '\n';
    }
  }
  return out.str();
}

std::string histogram_json(const Histogram2D& h) {
  nlohmann::json j;
  j["axis_x"] = quad_label(h.label_x());
  j["axis_y"] = quad_label(h.label_y());
  j["edges_x"] = h.edges_x();
  j["edges_y"] = h.edges_y();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < h.x().bins; ++i) {
    std::vector<std::uint64_t> row(h.y().bins);
    for (int k = 0; k < h.y().bins; ++k) row[k] = h.count(i, k);
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  j["n_total"] = h.n_total();
  j["overflow"] = h.overflow();
  return j.dump() + "\n";
}

std::string tomography_json(const TomographyResult& r) {
  nlohmann::ordered_json j;
  std::vector<double> v(16);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) v[4 * i + k] = r.v(i, k);
  j["v"] = v;
  j["r_fit"] = r.r_fit;
  j["r_fit_pure"] = r.r_fit_pure;
  j["n_add_fit"] = r.n_add_fit;
  j["witness_d"] = r.witness_d;
  j["scale_factors"] = {r.scale_factors.g1, r.scale_factors.g2};
  j["n_records"] = {{"pump_on", r.n_records_on}, {"pump_off", r.n_records_off}};
  j["residual"] = r.residual;
  j["residual_pure"] = r.residual_pure;
  j["min_uncertainty_eigenvalue"] = r.min_uncertainty_eigenvalue;
  j["marginally_unphysical"] = r.marginally_unphysical;
  return j.dump(2) + "\n";
}

std::string wigner_csv(const WignerGrid2D& g) {
  std::ostringstream out;
  out << lower(quad_label(g.axis_x)) << ',' << lower(quad_label(g.axis_y)) << ",density\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    for (std::size_t k = 0; k < g.ys.size(); ++k) {
      out << format_double(g.xs[i]) << ',' << format_double(g.ys[k]) << ','
          << format_double(g.density[i * g.ys.size() + k]) << '\n';
    }
  }
  return out.str();
}

}  // namespace jpatomo
