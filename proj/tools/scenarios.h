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

#ifndef JPATOMO_TOOLS_SCENARIOS_H_
#define JPATOMO_TOOLS_SCENARIOS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.h"
#include "jpatomo/error.h"

namespace jpatomo::app {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Scenario { kFluxSweep, kReflection, kGainMap, kPsd, kTomography };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
std::vector<std::string_view> scenario_names();

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code);

struct OutputFile {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

struct ScenarioReport {
  std::vector<OutputFile> files;
  /// Scenario-specific summary copied into the manifest.
  std::string results_json = "{}";
};

std::string sha256_hex(std::string_view data);

/// Builds the two-mode state the tomography scenario measures.
GaussianState source_state(const ExperimentConfig& config);

/// Runs one scenario, writing its data files plus manifest.json into
/// out_dir (created if needed). Throws Error on failure.
ScenarioReport run_scenario(Scenario scenario, const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

}  // namespace jpatomo::app

#endif  // JPATOMO_TOOLS_SCENARIOS_H_
