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

// Dataset loading and saving.
//
// JSONL record schemas, one object per line:
//   classification       {"id","text","label"}
//   pair-classification  {"id","premise","hypothesis","label"}
//   sequence-labeling    {"id","tokens":[..],"tags":[..]}
//   aspect-sentiment     {"id","text","aspects":[{"term","start","end",
//                         "polarity"}]}   (char offsets into text)
// Optional keys on every record: "meta" (string map), "target" (aspect
// index), "frozen" (field -> token indices). CSV is accepted for
// classification only, with header id,text,label.

#ifndef FLINT_DATASET_H_
#define FLINT_DATASET_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "flint/sample.h"

namespace flint {

enum class DataFormat { kJsonl, kCsv };

DataFormat ParseDataFormat(std::string_view name);

struct Provenance {
  std::string source;
  std::vector<std::string> lineage;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Dataset {
  std::string name;
  Task task = Task::kClassification;
  std::vector<Sample> samples;
  Provenance provenance;

  std::size_t size() const { return samples.size(); }
  // Throws DuplicateIdError or TaskError.
  void Validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Record <-> sample conversion. `record` is the 1-based record number used
// in SchemaError messages.
Sample SampleFromJson(const nlohmann::json& j, Task task, std::size_t record);
nlohmann::ordered_json SampleToJson(const Sample& sample);

Dataset LoadDataset(const std::string& path, DataFormat format, Task task);
void SaveDataset(const Dataset& dataset, const std::string& path,
                 DataFormat format);

// Parses JSONL text directly; used by tests and by the pipeline.
Dataset ParseJsonl(std::string_view text, Task task, std::string name = "");
std::string ToJsonl(const Dataset& dataset);

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace flint

#endif  // FLINT_DATASET_H_
