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

#include "jpatomo/record_io.h"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "jpatomo/error.h"
#include "jpatomo/format.h"

namespace jpatomo {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

void put(std::ostream& out, double x) {
  const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(x));
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.write(buf, 8);
}

}  // namespace

void write_records_binary(std::ostream& out, std::span<const MeasurementRecord> records) {
  for (const auto& r : records) {
    put(out, r.s1.real());
    put(out, r.s1.imag());
    put(out, r.s2.real());
    put(out, r.s2.imag());
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing binary records");
}

std::vector<MeasurementRecord> read_records_binary(std::istream& in) {
  std::vector<MeasurementRecord> records;
  char buf[32];
  for (;;) {
    in.read(buf, 32);
    const auto got = in.gcount();
    if (got == 0) break;
    if (got != 32) throw Error(ErrorCode::kInvalidInput, "truncated binary record stream");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, buf + 8 * i, 8);
      v[i] = std::bit_cast<double>(to_little_endian(bits));
    }
    records.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return records;
}

void write_records_csv(std::ostream& out, std::span<const MeasurementRecord> records) {
  out << "re_s1,im_s1,re_s2,im_s2\n";
  for (const auto& r : records) {
    out << format_double(r.s1.real()) << ',' << format_double(r.s1.imag()) << ','
        << format_double(r.s2.real()) << ',' << format_double(r.s2.imag()) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing CSV records");
}

std::vector<MeasurementRecord> read_records_csv(std::istream& in) {
  std::vector<MeasurementRecord> records;
  std::string line;
  if (!std::getline(in, line) || line.rfind("re_s1,im_s1,re_s2,im_s2", 0) != 0) {
    throw Error(ErrorCode::kInvalidInput, "missing record CSV header");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 4; ++i) {
      auto [next, ec] = std::from_chars(p, end, v[i]);
      if (ec != std::errc{}) {
        throw Error(ErrorCode::kInvalidInput, "bad number on CSV line " + std::to_string(line_no));
      }
      p = next;
      if (i < 3) {
        if (p == end || *p != ',') {
          throw Error(ErrorCode::kInvalidInput, "expected 4 columns on CSV line " + std::to_string(line_no));
        }
        ++p;
      }
    }
    records.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return records;
}

}  // namespace jpatomo
