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

#include "jpatomo/rng.h"

#include <thread>

#include "jpatomo/error.h"

namespace jpatomo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ domain);
  h = splitmix64(h ^ stream);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(domain)};
  return std::mt19937_64(seq);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kSingularCovariance: return "singular-covariance";
    case ErrorCode::kInvalidCovariance: return "invalid-covariance";
    case ErrorCode::kDivergentInductance: return "divergent-inductance";
    case ErrorCode::kUnstableRegime: return "unstable-regime";
    case ErrorCode::kFitDegenerate: return "fit-degenerate";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kInvalidGrid: return "invalid-grid";
    case ErrorCode::kInternalConsistency: return "internal-consistency";
    case ErrorCode::kUnsupportedFilter: return "unsupported-filter";
    case ErrorCode::kRangeTooSmall: return "range-too-small";
    case ErrorCode::kDegenerateReference: return "degenerate-reference";
    case ErrorCode::kUnphysicalState: return "unphysical-state";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularCovariance:
    case ErrorCode::kInvalidCovariance:
    case ErrorCode::kFitDegenerate:
    case ErrorCode::kNoConvergence:
    case ErrorCode::kInternalConsistency:
    case ErrorCode::kRangeTooSmall:
    case ErrorCode::kDegenerateReference:
    case ErrorCode::kUnphysicalState:
      return true;
    default:
      return false;
  }
}

}  // namespace jpatomo
