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

#ifndef JPATOMO_ERROR_H_
#define JPATOMO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jpatomo {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes (see tools/scenarios.h).
enum class ErrorCode {
  kInvalidArgument,
  kSingularCovariance,
  kInvalidCovariance,
  kDivergentInductance,
  kUnstableRegime,
  kFitDegenerate,
  kNoConvergence,
  kInvalidGrid,
  kInternalConsistency,
  kUnsupportedFilter,
  kRangeTooSmall,
  kDegenerateReference,
  kUnphysicalState,
  kInvalidInput,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for failures that stem from numerics (non-convergence, unphysical
/// estimates) rather than bad input.
bool is_numerical(ErrorCode code);

}  // namespace jpatomo

#endif  // JPATOMO_ERROR_H_
