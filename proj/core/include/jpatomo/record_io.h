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

#ifndef JPATOMO_RECORD_IO_H_
#define JPATOMO_RECORD_IO_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "jpatomo/detection_chain.h"

namespace jpatomo {

// Record streams carry four 64-bit floats per record in the order
// re_s1, im_s1, re_s2, im_s2. The binary form is little-endian with no
// header; the CSV form has a header line with those column names.

void write_records_binary(std::ostream& out, std::span<const MeasurementRecord> records);
std::vector<MeasurementRecord> read_records_binary(std::istream& in);

void write_records_csv(std::ostream& out, std::span<const MeasurementRecord> records);
std::vector<MeasurementRecord> read_records_csv(std::istream& in);

}  // namespace jpatomo

#endif  // JPATOMO_RECORD_IO_H_
