// Copyright 2026 The Flint Authors.
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

// Command-line entry point.
//
//   flint <mode> --config run.json [--seed N] [--out DIR] [--model SPEC]
//   flint list [--task TASK]
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 adapter
// error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "flint/config.h"
#include "flint/error.h"
#include "flint/pipeline.h"
#include "flint/transform.h"

namespace {

int RunMode(const std::string& mode, const std::string& config_path,
            std::optional<std::uint64_t> seed, const std::string& out,
            const std::string& model) {
  flint::Config config = flint::LoadConfig(config_path);
  if (seed) config.seed = *seed;
  if (!out.empty()) config.output_dir = out;
  if (!model.empty()) config.model.spec = model;
  const flint::RunResult result = flint::RunPipeline(config, mode);
  std::cout << mode << ": wrote " << result.manifest["artifacts"].size()
            << " artifacts to " << result.directory << "\n";
  for (const auto& a : result.manifest["artifacts"]) {
    std::cout << "  " << a["file"].get<std::string>() << " ("
              << a["lines"].get<std::size_t>() << " lines)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness evaluation toolkit for NLP models"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string model;
  for (const std::string& mode : flint::PipelineModes()) {
    CLI::App* sub = app.add_subcommand(mode, "Run the " + mode + " stage");
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "Global seed (overrides the config)");
    sub->add_option("--out", out, "Output directory (overrides the config)");
    sub->add_option("--model", model,
                    "builtin:<name> | exec:<command> | tcp:<host:port>");
  }
  std::string list_task = "classification";
  CLI::App* list = app.add_subcommand("list", "List transformations for a task");
  list->add_option("--task", list_task, "Task name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) {
      for (const std::string& name :
           flint::DefaultTransforms(flint::ParseTask(list_task))) {
        std::cout << name << "\n";
      }
      return 0;
    }
    for (const std::string& mode : flint::PipelineModes()) {
      if (app.got_subcommand(mode)) {
        return RunMode(mode, config_path, seed, out, model);
      }
    }
  } catch (const flint::Error& e) {
    std::cerr << "flint: " << e.what() << "\n";
    return e.exit_code();
  } catch (const flint::NotApplicable& e) {
    std::cerr << "flint: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "flint: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
