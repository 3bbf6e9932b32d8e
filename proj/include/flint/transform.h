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

// Transformations: deterministic rewrites of a sample that return the new
// sample together with the edit trace that produced it.
//
// Every transformation is addressed by a string name ("Typos",
// "WordCase:upper", "RevTgt"). A per-sample transformation is a pure function
// of (sample, seed, options); the caller derives the seed with SampleSeed().

#ifndef FLINT_TRANSFORM_H_
#define FLINT_TRANSFORM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/edit_trace.h"
#include "flint/random.h"
#include "flint/resources.h"
#include "flint/sample.h"

namespace flint {

struct PerturbParams {
  double word_ratio = 0.1;         // fraction of eligible words perturbed
  int max_edits_per_word = 1;      // character edits per perturbed word
  std::size_t min_word_len = 3;    // shorter words are never eligible

  // Throws ConfigError when out of range.
  void Validate() const;
};

// Rewrites texts through an external model (paraphrase, masked-LM fill).
// Returns one rewrite per input text.
using Rewriter = std::function<std::vector<std::string>(
    Task task, const std::vector<std::string>& texts)>;

struct TransformOptions {
  PerturbParams perturb;
  std::size_t max_outputs = 1;
  // Transformation-specific settings, e.g. {"position": "prepend"} for
  // AppendIrr or {"count": 50} for Overlap.
  nlohmann::json extra = nlohmann::json::object();
  const Resources* resources = nullptr;  // null: bundled resources
  Rewriter rewriter;                     // plug-in transformations only
};

struct TransformOutput {
  std::string original_id;  // empty for generated samples
  Sample transformed;
  EditTrace trace;
  std::string transform;
  nlohmann::ordered_json params;
  std::map<std::string, double> validator_scores;

  friend bool operator==(const TransformOutput&,
                         const TransformOutput&) = default;
};

enum class TransformKind {
  kPerSample,   // one sample in, variants out
  kWindow,      // consumes k consecutive samples
  kGenerative,  // produces samples from templates, no input
};

// One variant produced by a transformation: the trace plus any label changes
// the trace declares.
struct Variant {
  EditTrace trace;
  std::optional<std::string> label;
  std::map<std::size_t, std::string> aspect_polarity;  // aspect index -> new
  std::map<std::string, std::string> meta;
};

class Transform {
 public:
  Transform(std::string name, TransformOptions options);
  virtual ~Transform() = default;

  const std::string& name() const { return name_; }
  const TransformOptions& options() const { return options_; }
  const Resources& resources() const { return *resources_; }
  const PerturbParams& params() const { return options_.perturb; }

  virtual bool Supports(Task task) const = 0;
  virtual TransformKind kind() const { return TransformKind::kPerSample; }
  // Non-empty for transformations that rewrite a label ("label",
  // "aspects", "tags"). Two transforms editing the same key do not combine.
  virtual std::string label_key() const { return ""; }
  // Window width for kWindow transformations.
  virtual std::size_t window() const { return 1; }

  // Up to max_outputs distinct variants, in variant order. Throws
  // NotApplicable when the sample has no eligible site and TaskError when the
  // task is unsupported.
  std::vector<TransformOutput> Apply(const Sample& sample,
                                     std::uint64_t seed) const;

  // kWindow: one output for the window.
  virtual TransformOutput ApplyWindow(std::span<const Sample> window,
                                      std::uint64_t seed) const;

  // kGenerative: `count` samples from `seed`.
  virtual std::vector<TransformOutput> Generate(Task task, std::size_t count,
                                                std::uint64_t seed) const;

  // Parameters recorded with every output.
  virtual nlohmann::ordered_json Describe() const;

 protected:
  virtual Variant Perturb(const Sample& sample, Rng& rng) const = 0;
  // Whether an unsupported task raises NotApplicable instead of TaskError.
  virtual bool QuietOnUnsupportedTask() const { return false; }

  // Builds the output for one variant: remaps labels, applies declared label
  // changes and checks the result differs from the input.
  TransformOutput Finish(const Sample& sample, Variant variant,
                         std::size_t index) const;

 private:
  std::string name_;
  TransformOptions options_;
  const Resources* resources_;
};

// Seed for variant `k` of a sample; variant 0 uses the sample seed itself.
std::uint64_t VariantSeed(std::uint64_t sample_seed, std::size_t k);

// Registry.
std::unique_ptr<Transform> MakeTransform(const std::string& name,
                                         const TransformOptions& options = {});
bool IsKnownTransform(const std::string& name);
// Every registered name, in registry order. Parameterised names such as
// "Prejudice:region:<name>" are listed with their fixed variants only.
std::vector<std::string> TransformNames();
// Per-sample transformations that need no adapter and support `task`.
std::vector<std::string> DefaultTransforms(Task task);

// Serialization of outputs as JSONL records: the transformed sample in its
// task schema plus "original_id", "transform", "params", "trace" and
// "validator_scores".
nlohmann::ordered_json TraceToJson(const EditTrace& trace);
EditTrace TraceFromJson(const nlohmann::json& j);
nlohmann::ordered_json OutputToJson(const TransformOutput& output);
TransformOutput OutputFromJson(const nlohmann::json& j, Task task,
                               std::size_t record);

}  // namespace flint

#endif  // FLINT_TRANSFORM_H_
