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

// Runs a configuration end to end. Each mode writes into
// <output_dir>/<mode>/ and finishes with a manifest.json recording the config
// hash, seed and the line count of every artifact.
//
//   transform  one JSONL per transformation and per combination
//   slice      one JSONL per subpopulation
//   validate   kept outputs per transformation plus rejections.jsonl
//   evaluate   results.jsonl with paired rows, summary.json
//   attack     attacks.jsonl, summary.json
//   report     report.json / report.md / report.tex, plots.json
//   augment    train.jsonl: originals followed by kept outputs

#ifndef FLINT_PIPELINE_H_
#define FLINT_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/config.h"
#include "flint/dataset.h"
#include "flint/transform.h"

namespace flint {

const std::vector<std::string>& PipelineModes();

struct TransformRun {
  std::string name;
  std::vector<TransformOutput> outputs;  // sample order, then variant order
  std::size_t not_applicable = 0;
};

// Applies one transformation to every sample with SampleSeed(seed, id, name).
// Samples run in parallel; output order does not depend on scheduling.
// Errors other than NotApplicable are rethrown with the sample id.
TransformRun RunTransform(const Transform& transform, const Dataset& dataset,
                          std::uint64_t seed);

// Chains per-sample transformations: each step runs on every output of the
// previous one, seeded by the id of the sample it receives. Traces are
// composed against the original.
TransformRun RunCombination(const std::vector<const Transform*>& steps,
                            const Dataset& dataset, std::uint64_t seed);

// File name for a transformation or combination output.
std::string OutputFileName(const std::string& name);

struct RunResult {
  std::string directory;
  nlohmann::ordered_json manifest;
};

RunResult RunPipeline(const Config& config, const std::string& mode);

}  // namespace flint

#endif  // FLINT_PIPELINE_H_
