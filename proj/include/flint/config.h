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

// Run configuration. A JSON object; every key is optional:
//
//   {
//     "task": "classification",
//     "seed": 42,
//     "dataset": {"path": "data/toy_sa.jsonl", "format": "jsonl"},
//     "transformations": ["Typos", {"name": "Ocr", "params": {"word_ratio": 0.3},
//                                   "max_outputs": 2}],
//     "combinations": [["Typos", "WordCase:upper"]],
//     "subpopulations": [{"attribute": "length", "end": "top", "fraction": 0.2}],
//     "validators": {"enabled": true, "max_ratio": 0.4},
//     "model": {"spec": "builtin:keyword", "majority_class": "negative"},
//     "attack": {"enabled": true, "budget": 50},
//     "report": {"formats": ["json", "markdown", "latex"], "worst_k": 5},
//     "resources": "path/to/resource/dir",
//     "output_dir": "flint-out"
//   }
//
// Omitted transformations default to every transformation supporting the
// task (plug-in rewriters excluded). Relative paths resolve against the
// config file's directory.

#ifndef FLINT_CONFIG_H_
#define FLINT_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/dataset.h"
#include "flint/sample.h"
#include "flint/subpopulation.h"
#include "flint/transform.h"
#include "flint/validate.h"

namespace flint {

struct TransformSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::size_t max_outputs = 1;

  // Options for MakeTransform: perturbation keys go to PerturbParams, the
  // rest to `extra`.
  TransformOptions Options() const;
};

struct ModelConfig {
  std::string spec;  // empty: no model
  std::optional<std::string> majority_class;
  std::map<std::string, std::vector<std::string>> keywords;
  std::size_t batch_size = 32;
  std::int64_t timeout_ms = 30000;
};

struct Config {
  Task task = Task::kClassification;
  std::uint64_t seed = 42;
  std::string dataset_path;
  DataFormat format = DataFormat::kJsonl;
  std::vector<TransformSpec> transforms;
  std::vector<std::vector<std::string>> combinations;
  std::vector<SliceSpec> slices;
  ValidatorConfig validator;
  ModelConfig model;
  bool attack = false;  // include the attack in reports
  std::optional<std::size_t> attack_budget;
  std::vector<std::string> report_formats = {"json", "markdown", "latex"};
  std::size_t worst_k = 5;
  std::string resource_dir;  // empty: bundled
  std::string output_dir = "flint-out";

  // Canonical form; hashing this identifies the run.
  nlohmann::ordered_json ToJson() const;
};

// Parses and validates. `base_dir` anchors relative paths. Throws
// ConfigError naming the offending key or transformation.
Config ParseConfig(const nlohmann::json& j, const std::string& base_dir = "");
// Reads a config file; an empty file yields the defaults.
Config LoadConfig(const std::string& path);

// Rejects combinations that cannot be chained: unknown or unsupported
// members, window or generative members, and two members rewriting the same
// label.
void CheckCombination(const std::vector<std::string>& members, Task task);
std::string CombinationName(const std::vector<std::string>& members);

// Hex FNV-1a-64 of the canonical config.
std::string ConfigHash(const Config& config);

}  // namespace flint

#endif  // FLINT_CONFIG_H_
