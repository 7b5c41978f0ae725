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

// jpatomo: run a named scenario against an experiment config and write its
// artifacts plus manifest.json.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.h"
#include "scenarios.h"

int main(int argc, char** argv) {
  using namespace jpatomo;
  using namespace jpatomo::app;

  CLI::App cli{"Two-mode squeezing tomography simulator"};
  cli.set_version_flag("--version", std::string(kVersion));
  std::string config_path;
  std::string out_dir;
  std::string scenario_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> records;
  std::optional<unsigned> threads;
  bool dump_config = false;

  std::string names;
  for (auto n : scenario_names()) names += (names.empty() ? "" : ", ") + std::string(n);
  cli.add_option("--config", config_path, "Experiment config (JSON); built-in defaults if omitted");
  cli.add_option("--out", out_dir, "Output directory");
  cli.add_option("--scenario", scenario_name, "Scenario: " + names);
  cli.add_option("--seed", seed, "Override run.seed");
  cli.add_option("--records", records, "Override run.n_records");
  cli.add_option("--threads", threads, "Override run.threads (0 = all cores)");
  cli.add_flag("--dump-config", dump_config, "Print the effective config and exit");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kExitConfig;
  }

  try {
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (seed) config.run.seed = *seed;
    if (records) config.run.n_records = *records;
    if (threads) config.run.threads = *threads;
    config.validate();
    if (dump_config) {
      std::cout << serialize_config(config);
      return kExitOk;
    }
    const auto scenario = parse_scenario(scenario_name);
    if (!scenario) {
      std::cerr << "error: --scenario must be one of: " << names << "\n";
      return kExitConfig;
    }
    if (out_dir.empty()) {
      std::cerr << "error: --out is required\n";
      return kExitConfig;
    }
    const ScenarioReport rep = run_scenario(*scenario, config, out_dir);
    std::cout << "scenario " << to_string(*scenario) << ": wrote " << rep.files.size() + 1 << " files to " << out_dir
              << "\n"
              << rep.results_json << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
