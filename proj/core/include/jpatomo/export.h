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

#ifndef JPATOMO_EXPORT_H_
#define JPATOMO_EXPORT_H_

#include <string>

#include "jpatomo/histogram.h"
#include "jpatomo/tomography.h"

namespace jpatomo {

// Text serializations of pipeline products. Numbers use the shortest
// round-trip representation, so identical inputs give identical bytes.

/// One row per bin: ix,iy,x_lo,x_hi,y_lo,y_hi,count. A comment header carries
/// the axis labels, totals and overflow.
std::string histogram_csv(const Histogram2D& h);

/// {"axis_x", "axis_y", "edges_x", "edges_y", "counts" (rows along x),
///  "n_total", "overflow"}.
std::string histogram_json(const Histogram2D& h);

/// {"v" (row-major 16), "r_fit", "r_fit_pure", "n_add_fit", "witness_d",
///  "scale_factors" [g1, g2], "n_records" {"pump_on", "pump_off"}, ...}.
std::string tomography_json(const TomographyResult& result);

/// Header "<x-label>,<y-label>,density" then one row per grid point.
std::string wigner_csv(const WignerGrid2D& grid);

}  // namespace jpatomo

#endif  // JPATOMO_EXPORT_H_
