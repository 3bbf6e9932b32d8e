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

#include "flint/sample.h"

#include <algorithm>

#include "flint/error.h"

namespace flint {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kClassification:
      return "classification";
    case Task::kPairClassification:
      return "pair-classification";
    case Task::kSequenceLabeling:
      return "sequence-labeling";
    case Task::kAspectSentiment:
      return "aspect-sentiment";
  }
  return "unknown";
}

Task ParseTask(std::string_view name) {
  for (Task t : {Task::kClassification, Task::kPairClassification,
                 Task::kSequenceLabeling, Task::kAspectSentiment}) {
    if (TaskName(t) == name) return t;
  }
  throw ConfigError("unknown task \"" + std::string(name) + "\"");
}

const std::vector<std::string>& TaskFields(Task task) {
  static const std::vector<std::string> kText = {"text"};
  static const std::vector<std::string> kPair = {"premise", "hypothesis"};
  return task == Task::kPairClassification ? kPair : kText;
}

const TextField& Sample::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) {
    throw TaskError("sample " + id + " has no field \"" + name + "\"");
  }
  return it->second;
}

std::string Sample::main_field_name() const {
  return task == Task::kPairClassification ? "hypothesis" : "text";
}

const TextField& Sample::main_field() const { return field(main_field_name()); }

void Sample::Validate() const {
  const auto& names = TaskFields(task);
  if (fields.size() != names.size()) {
    throw TaskError("sample " + id + " carries " +
                    std::to_string(fields.size()) + " fields, task " +
                    std::string(TaskName(task)) + " expects " +
                    std::to_string(names.size()));
  }
  for (const auto& n : names) field(n);

  switch (task) {
    case Task::kClassification:
    case Task::kPairClassification:
      if (label.empty()) throw TaskError("sample " + id + " has no label");
      if (!tags.empty() || !aspects.empty()) {
        throw TaskError("sample " + id + " mixes label forms");
      }
      break;
    case Task::kSequenceLabeling:
      if (tags.size() != field("text").size()) {
        throw TaskError("sample " + id + " has " + std::to_string(tags.size()) +
                        " tags for " + std::to_string(field("text").size()) +
                        " tokens");
      }
      break;
    case Task::kAspectSentiment: {
      const std::size_t n = field("text").size();
      for (const Aspect& a : aspects) {
        if (a.start >= a.end || a.end > n) {
          throw TaskError("sample " + id + " aspect \"" + a.term +
                          "\" out of range");
        }
      }
      if (!aspects.empty() && target >= aspects.size()) {
        throw TaskError("sample " + id + " target index out of range");
      }
      break;
    }
  }
}

Sample MakeTextSample(std::string id, Task task, std::string text) {
  Sample s;
  s.id = std::move(id);
  s.task = task;
  s.fields["text"] = TextField::FromRaw(std::move(text));
  return s;
}

bool IsBioScheme(const std::vector<std::string>& tags) {
  return std::all_of(tags.begin(), tags.end(), [](const std::string& t) {
    return t == "O" || t.rfind("B-", 0) == 0 || t.rfind("I-", 0) == 0;
  });
}

std::string EntityType(std::string_view tag) {
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    return std::string(tag.substr(2));
  }
  return {};
}

std::vector<SpanLabel> BioToSpans(const std::string& field,
                                  const std::vector<std::string>& tags) {
  std::vector<SpanLabel> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string type = EntityType(tags[i]);
    if (type.empty()) continue;
    const bool continues = tags[i][0] == 'I' && !spans.empty() &&
                           spans.back().end == i && spans.back().tag == type;
    if (continues) {
      spans.back().end = i + 1;
    } else {
      spans.push_back({field, i, i + 1, type});
    }
  }
  return spans;
}

std::vector<std::string> SpansToBio(std::size_t length,
                                    const std::vector<SpanLabel>& spans) {
  std::vector<std::string> tags(length, "O");
  for (const SpanLabel& s : spans) {
    for (std::size_t i = s.start; i < s.end && i < length; ++i) {
      tags[i] = (i == s.start ? "B-" : "I-") + s.tag;
    }
  }
  return tags;
}

}  // namespace flint
