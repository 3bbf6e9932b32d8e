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

#include "flint/transform.h"

#include <utility>

#include "flint/dataset.h"
#include "flint/error.h"
#include "transform_util.h"

namespace flint {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

void PerturbParams::Validate() const {
  if (!(word_ratio > 0.0 && word_ratio <= 1.0)) {
    throw ConfigError("word_ratio must be in (0, 1], got " +
                      std::to_string(word_ratio));
  }
  if (max_edits_per_word < 1) {
    throw ConfigError("max_edits_per_word must be at least 1");
  }
  if (min_word_len < 1) throw ConfigError("min_word_len must be at least 1");
}

std::uint64_t VariantSeed(std::uint64_t sample_seed, std::size_t k) {
  if (k == 0) return sample_seed;
  return Fnv1a64(std::to_string(sample_seed) + "#" + std::to_string(k));
}

Transform::Transform(std::string name, TransformOptions options)
    : name_(std::move(name)),
      options_(std::move(options)),
      resources_(options_.resources != nullptr ? options_.resources
                                               : &DefaultResources()) {
  options_.perturb.Validate();
  if (options_.max_outputs < 1) throw ConfigError("max_outputs must be >= 1");
}

namespace {

bool SameContent(const Sample& a, const Sample& b) {
  if (a.fields.size() != b.fields.size()) return false;
  for (const auto& [name, field] : a.fields) {
    auto it = b.fields.find(name);
    if (it == b.fields.end() || it->second.texts() != field.texts()) {
      return false;
    }
  }
  return a.label == b.label && a.tags == b.tags && a.aspects == b.aspects;
}

bool LabelsDiffer(const Sample& a, const Sample& b) {
  if (a.label != b.label || a.aspects.size() != b.aspects.size()) return true;
  for (std::size_t i = 0; i < a.aspects.size(); ++i) {
    if (a.aspects[i].polarity != b.aspects[i].polarity) return true;
  }
  return false;
}

}  // namespace

std::vector<TransformOutput> Transform::Apply(const Sample& sample,
                                              std::uint64_t seed) const {
  if (kind() != TransformKind::kPerSample) {
    throw ConfigError(name_ + " does not transform single samples");
  }
  if (!Supports(sample.task)) {
    const std::string why =
        name_ + " does not support task " + std::string(TaskName(sample.task));
    if (QuietOnUnsupportedTask()) throw NotApplicable(why);
    throw TaskError(why);
  }
  std::vector<TransformOutput> outputs;
  for (std::size_t k = 0; k < options_.max_outputs; ++k) {
    Rng rng(VariantSeed(seed, k));
    Variant v;
    try {
      v = Perturb(sample, rng);
    } catch (const NotApplicable&) {
      if (k == 0) throw;
      continue;
    }
    TransformOutput out;
    try {
      out = Finish(sample, std::move(v), outputs.size());
    } catch (const NotApplicable&) {
      if (k == 0) throw;
      continue;
    }
    bool duplicate = false;
    for (const TransformOutput& o : outputs) {
      duplicate = duplicate || SameContent(o.transformed, out.transformed);
    }
    if (!duplicate) outputs.push_back(std::move(out));
  }
  return outputs;
}

TransformOutput Transform::Finish(const Sample& sample, Variant variant,
                                  std::size_t index) const {
  if (variant.trace.empty() && !variant.label && variant.aspect_polarity.empty()) {
    throw NotApplicable(name_ + ": no edit");
  }
  Sample out = RemapLabels(sample, variant.trace);
  if (variant.label) out.label = *variant.label;
  for (const auto& [i, polarity] : variant.aspect_polarity) {
    out.aspects.at(i).polarity = polarity;
  }
  for (const auto& [k, v] : variant.meta) out.meta[k] = v;
  const bool relabeled = LabelsDiffer(sample, out);
  if (relabeled && !variant.trace.label_edit.relabeled) {
    throw InvariantError(name_ + " changed a label without declaring it");
  }
  if (SameContent(sample, out)) throw NotApplicable(name_ + ": output equals input");
  out.id = sample.id + "::" + name_;
  if (index > 0) out.id += "#" + std::to_string(index);
  out.Validate();

  TransformOutput result;
  result.original_id = sample.id;
  result.transformed = std::move(out);
  result.trace = std::move(variant.trace);
  result.transform = name_;
  result.params = Describe();
  return result;
}

TransformOutput Transform::ApplyWindow(std::span<const Sample>,
                                       std::uint64_t) const {
  throw ConfigError(name_ + " does not transform sample windows");
}

std::vector<TransformOutput> Transform::Generate(Task, std::size_t,
                                                 std::uint64_t) const {
  throw ConfigError(name_ + " does not generate samples");
}

ojson Transform::Describe() const {
  ojson j;
  j["word_ratio"] = options_.perturb.word_ratio;
  j["max_edits_per_word"] = options_.perturb.max_edits_per_word;
  j["min_word_len"] = options_.perturb.min_word_len;
  j["max_outputs"] = options_.max_outputs;
  for (const auto& [k, v] : options_.extra.items()) j[k] = v;
  return j;
}

// --- Registry ---

std::unique_ptr<Transform> MakeTransform(const std::string& name,
                                         const TransformOptions& options) {
  if (auto t = internal::MakeUniversalTransform(name, options)) return t;
  if (auto t = internal::MakeTaskTransform(name, options)) return t;
  throw ConfigError("unknown transformation \"" + name + "\"");
}

bool IsKnownTransform(const std::string& name) {
  try {
    MakeTransform(name);
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

std::vector<std::string> TransformNames() {
  std::vector<std::string> out = internal::UniversalTransformNames();
  const auto& task = internal::TaskTransformNames();
  out.insert(out.end(), task.begin(), task.end());
  return out;
}

std::vector<std::string> DefaultTransforms(Task task) {
  std::vector<std::string> out;
  for (const std::string& name : TransformNames()) {
    if (name == "BackTrans" || name == "MLMSuggestion") continue;
    if (MakeTransform(name)->Supports(task)) out.push_back(name);
  }
  return out;
}

// --- Serialization ---

namespace {

std::string_view KindName(EditKind k) {
  switch (k) {
    case EditKind::kReplace:
      return "replace";
    case EditKind::kInsert:
      return "insert";
    case EditKind::kDelete:
      return "delete";
  }
  return "replace";
}

}  // namespace

ojson TraceToJson(const EditTrace& trace) {
  ojson edits = ojson::object();
  for (const auto& [field, list] : trace.edits) {
    ojson arr = ojson::array();
    for (const Edit& e : list) {
      ojson je;
      je["op"] = KindName(e.kind);
      je["start"] = e.start;
      je["end"] = e.end;
      if (e.kind != EditKind::kDelete) je["tokens"] = e.tokens;
      if (!e.tags.empty()) je["tags"] = e.tags;
      arr.push_back(std::move(je));
    }
    edits[field] = std::move(arr);
  }
  ojson j;
  j["edits"] = std::move(edits);
  j["relabeled"] = trace.label_edit.relabeled;
  if (trace.label_edit.relabeled) {
    j["label_edit"] = trace.label_edit.description;
  }
  return j;
}

EditTrace TraceFromJson(const json& j) {
  EditTrace trace;
  for (const auto& [field, list] : j.at("edits").items()) {
    for (const json& je : list) {
      const std::string op = je.at("op").get<std::string>();
      const auto start = je.at("start").get<std::size_t>();
      const auto end = je.at("end").get<std::size_t>();
      const auto tokens =
          je.value("tokens", std::vector<std::string>{});
      const auto tags = je.value("tags", std::vector<std::string>{});
      if (op == "replace") {
        trace.Add(field, Edit::Replace(start, end, tokens, tags));
      } else if (op == "insert") {
        trace.Add(field, Edit::Insert(start, tokens, tags));
      } else if (op == "delete") {
        trace.Add(field, Edit::Delete(start, end));
      } else {
        throw ConfigError("unknown edit op \"" + op + "\"");
      }
    }
  }
  if (j.value("relabeled", false)) {
    trace.Relabel(j.value("label_edit", std::string()));
  }
  return trace;
}

ojson OutputToJson(const TransformOutput& output) {
  ojson j = SampleToJson(output.transformed);
  j["original_id"] = output.original_id;
  j["transform"] = output.transform;
  j["params"] = output.params;
  j["trace"] = TraceToJson(output.trace);
  if (!output.validator_scores.empty()) {
    ojson scores = ojson::object();
    for (const auto& [k, v] : output.validator_scores) scores[k] = v;
    j["validator_scores"] = std::move(scores);
  }
  return j;
}

TransformOutput OutputFromJson(const json& j, Task task, std::size_t record) {
  TransformOutput out;
  out.transformed = SampleFromJson(j, task, record);
  try {
    out.original_id = j.value("original_id", std::string());
    out.transform = j.value("transform", std::string());
    if (j.contains("params")) out.params = j.at("params");
    if (j.contains("trace")) out.trace = TraceFromJson(j.at("trace"));
    if (j.contains("validator_scores")) {
      for (const auto& [k, v] : j.at("validator_scores").items()) {
        out.validator_scores[k] = v.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(record, "trace", e.what());
  }
  return out;
}

}  // namespace flint
