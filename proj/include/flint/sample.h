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

#ifndef FLINT_SAMPLE_H_
#define FLINT_SAMPLE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flint/text.h"

namespace flint {

enum class Task {
  kClassification,
  kPairClassification,
  kSequenceLabeling,
  kAspectSentiment,
};

std::string_view TaskName(Task task);
// Throws ConfigError on an unknown name.
Task ParseTask(std::string_view name);

// Field names a task's samples carry, in canonical order.
const std::vector<std::string>& TaskFields(Task task);

// Labeled token range [start, end) inside one field.
struct SpanLabel {
  std::string field;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string tag;

  friend bool operator==(const SpanLabel&, const SpanLabel&) = default;
};

// An aspect term in an aspect-sentiment sample. Token indices into "text".
struct Aspect {
  std::string term;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string polarity;  // positive | negative | neutral

  friend bool operator==(const Aspect&, const Aspect&) = default;
};

struct Sample {
  std::string id;
  Task task = Task::kClassification;
  std::map<std::string, TextField> fields;

  // Exactly one label form is populated, chosen by `task`.
  std::string label;               // classification, pair-classification
  std::vector<std::string> tags;   // sequence-labeling, one per token
  std::vector<Aspect> aspects;     // aspect-sentiment
  std::size_t target = 0;          // aspect-sentiment: index into aspects

  std::map<std::string, std::string> meta;

  const TextField& field(const std::string& name) const;
  // The "text" field for single-text tasks, "hypothesis" for pairs.
  const TextField& main_field() const;
  std::string main_field_name() const;

  // Throws TaskError if fields or labels do not match `task`.
  void Validate() const;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Builds a single-text sample.
Sample MakeTextSample(std::string id, Task task, std::string text);

// --- Tag sequences ---------------------------------------------------------

// True if every tag is "O" or carries a B-/I- prefix.
bool IsBioScheme(const std::vector<std::string>& tags);

// Entity type of a BIO tag ("B-PER" -> "PER"); empty for "O".
std::string EntityType(std::string_view tag);

// Decodes BIO tags into entity spans. A stray I- tag opens a new span.
std::vector<SpanLabel> BioToSpans(const std::string& field,
                                  const std::vector<std::string>& tags);

// Encodes spans as BIO over `length` tokens.
std::vector<std::string> SpansToBio(std::size_t length,
                                    const std::vector<SpanLabel>& spans);

}  // namespace flint

#endif  // FLINT_SAMPLE_H_
