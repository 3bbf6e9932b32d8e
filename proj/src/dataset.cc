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

#include "flint/dataset.h"

#include <fstream>
#include <set>
#include <sstream>

#include "flint/error.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const json& Require(const json& j, const char* key, std::size_t record) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw SchemaError(record, key, "missing");
  }
  return *it;
}

std::string RequireString(const json& j, const char* key, std::size_t record) {
  const json& v = Require(j, key, record);
  if (!v.is_string()) throw SchemaError(record, key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> RequireStringArray(const json& j, const char* key,
                                            std::size_t record) {
  const json& v = Require(j, key, record);
  if (!v.is_array()) throw SchemaError(record, key, "expected an array");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) {
      throw SchemaError(record, key, "expected an array of strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::size_t RequireIndex(const json& j, const char* key, std::size_t record) {
  const json& v = Require(j, key, record);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0)) {
    throw SchemaError(record, key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool IsPolarity(const std::string& p) {
  return p == "positive" || p == "negative" || p == "neutral";
}

bool IsNliLabel(const std::string& l) {
  return l == "entailment" || l == "neutral" || l == "contradiction";
}

}  // namespace

DataFormat ParseDataFormat(std::string_view name) {
  if (name == "jsonl") return DataFormat::kJsonl;
  if (name == "csv") return DataFormat::kCsv;
  throw ConfigError("unknown data format \"" + std::string(name) + "\"");
}

void Dataset::Validate() const {
  std::set<std::string> ids;
  for (const Sample& s : samples) {
    if (s.task != task) {
      throw TaskError("sample " + s.id + " has task " +
                      std::string(TaskName(s.task)) + ", dataset has " +
                      std::string(TaskName(task)));
    }
    if (!ids.insert(s.id).second) throw DuplicateIdError(s.id);
    s.Validate();
  }
}

Sample SampleFromJson(const json& j, Task task, std::size_t record) {
  if (!j.is_object()) throw SchemaError(record, "", "record is not an object");
  Sample s;
  s.task = task;
  s.id = RequireString(j, "id", record);
  if (s.id.empty()) throw SchemaError(record, "id", "empty");

  switch (task) {
    case Task::kClassification:
      s.fields["text"] = TextField::FromRaw(RequireString(j, "text", record));
      s.label = RequireString(j, "label", record);
      if (s.label.empty()) throw SchemaError(record, "label", "empty");
      break;
    case Task::kPairClassification:
      s.fields["premise"] =
          TextField::FromRaw(RequireString(j, "premise", record));
      s.fields["hypothesis"] =
          TextField::FromRaw(RequireString(j, "hypothesis", record));
      s.label = RequireString(j, "label", record);
      if (!IsNliLabel(s.label)) {
        throw SchemaError(record, "label", "not an NLI label: " + s.label);
      }
      break;
    case Task::kSequenceLabeling: {
      const auto tokens = RequireStringArray(j, "tokens", record);
      s.tags = RequireStringArray(j, "tags", record);
      try {
        s.fields["text"] = TextField::FromTokens(tokens);
      } catch (const BoundsError& e) {
        throw SchemaError(record, "tokens", e.what());
      }
      if (s.tags.size() != tokens.size()) {
        throw SchemaError(record, "tags", "length differs from tokens");
      }
      break;
    }
    case Task::kAspectSentiment: {
      std::string text = RequireString(j, "text", record);
      s.fields["text"] = TextField::FromRaw(text);
      const TextField& field = s.fields["text"];
      const json& aspects = Require(j, "aspects", record);
      if (!aspects.is_array()) {
        throw SchemaError(record, "aspects", "expected an array");
      }
      for (const json& a : aspects) {
        Aspect asp;
        asp.term = RequireString(a, "term", record);
        const std::size_t start = RequireIndex(a, "start", record);
        const std::size_t end = RequireIndex(a, "end", record);
        asp.polarity = RequireString(a, "polarity", record);
        if (!IsPolarity(asp.polarity)) {
          throw SchemaError(record, "polarity", "unknown " + asp.polarity);
        }
        if (start >= end || end > text.size()) {
          throw SchemaError(record, "aspects", "bad char offsets");
        }
        bool found = false;
        for (const Token& t : field.tokens()) {
          if (t.char_start < end && t.char_end > start) {
            if (!found) asp.start = t.index;
            asp.end = t.index + 1;
            found = true;
          }
        }
        if (!found) {
          throw SchemaError(record, "aspects", "offsets cover no token");
        }
        s.aspects.push_back(std::move(asp));
      }
      if (j.contains("target")) s.target = RequireIndex(j, "target", record);
      if (!s.aspects.empty() && s.target >= s.aspects.size()) {
        throw SchemaError(record, "target", "out of range");
      }
      break;
    }
  }

  if (j.contains("meta")) {
    const json& meta = j["meta"];
    if (!meta.is_object()) throw SchemaError(record, "meta", "expected object");
    for (const auto& [k, v] : meta.items()) {
      if (!v.is_string()) throw SchemaError(record, "meta", "non-string value");
      s.meta[k] = v.get<std::string>();
    }
  }
  if (j.contains("frozen")) {
    const json& frozen = j["frozen"];
    if (!frozen.is_object()) {
      throw SchemaError(record, "frozen", "expected object");
    }
    for (const auto& [name, idx] : frozen.items()) {
      auto it = s.fields.find(name);
      if (it == s.fields.end() || !idx.is_array()) {
        throw SchemaError(record, "frozen", "bad entry " + name);
      }
      std::set<std::size_t> set;
      for (const json& i : idx) set.insert(i.get<std::size_t>());
      try {
        it->second.set_frozen(std::move(set));
      } catch (const BoundsError& e) {
        throw SchemaError(record, "frozen", e.what());
      }
    }
  }
  return s;
}

ojson SampleToJson(const Sample& s) {
  ojson j;
  j["id"] = s.id;
  switch (s.task) {
    case Task::kClassification:
      j["text"] = s.field("text").raw();
      j["label"] = s.label;
      break;
    case Task::kPairClassification:
      j["premise"] = s.field("premise").raw();
      j["hypothesis"] = s.field("hypothesis").raw();
      j["label"] = s.label;
      break;
    case Task::kSequenceLabeling:
      j["tokens"] = s.field("text").texts();
      j["tags"] = s.tags;
      break;
    case Task::kAspectSentiment: {
      const TextField& f = s.field("text");
      j["text"] = f.raw();
      ojson aspects = ojson::array();
      for (const Aspect& a : s.aspects) {
        ojson aj;
        aj["term"] = a.term;
        aj["start"] = f.tokens()[a.start].char_start;
        aj["end"] = f.tokens()[a.end - 1].char_end;
        aj["polarity"] = a.polarity;
        aspects.push_back(std::move(aj));
      }
      j["aspects"] = std::move(aspects);
      if (s.target != 0) j["target"] = s.target;
      break;
    }
  }
  if (!s.meta.empty()) {
    ojson meta = ojson::object();
    for (const auto& [k, v] : s.meta) meta[k] = v;
    j["meta"] = std::move(meta);
  }
  ojson frozen = ojson::object();
  for (const auto& [name, field] : s.fields) {
    if (!field.frozen().empty()) {
      frozen[name] = std::vector<std::size_t>(field.frozen().begin(),
                                              field.frozen().end());
    }
  }
  if (!frozen.empty()) j["frozen"] = std::move(frozen);
  return j;
}

Dataset ParseJsonl(std::string_view text, Task task, std::string name) {
  Dataset d;
  d.name = std::move(name);
  d.task = task;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::set<std::string> ids;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (nl == text.size()) break;
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError(line_no, "", std::string("invalid JSON: ") + e.what());
    }
    Sample s = SampleFromJson(j, task, line_no);
    if (!ids.insert(s.id).second) {
      throw DuplicateIdError(s.id + " (line " + std::to_string(line_no) + ")");
    }
    d.samples.push_back(std::move(s));
    if (nl == text.size()) break;
  }
  return d;
}

std::string ToJsonl(const Dataset& dataset) {
  std::string out;
  for (const Sample& s : dataset.samples) {
    out += SampleToJson(s).dump();
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
      }
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell.push_back(c);
      any = true;
    }
  }
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Dataset LoadDataset(const std::string& path, DataFormat format, Task task) {
  const std::string text = ReadFile(path);
  Dataset d;
  if (format == DataFormat::kJsonl) {
    d = ParseJsonl(text, task, path);
  } else {
    if (task != Task::kClassification) {
      throw ConfigError("CSV input supports classification only");
    }
    d.task = task;
    d.name = path;
    const auto rows = ParseCsv(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"id", "text", "label"}) {
      throw SchemaError(1, "header", "expected id,text,label");
    }
    std::set<std::string> ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const char* names[] = {"id", "text", "label"};
      if (row.size() != 3) {
        throw SchemaError(r + 1, names[std::min<std::size_t>(row.size(), 2)],
                          "expected 3 columns");
      }
      json j = {{"id", row[0]}, {"text", row[1]}, {"label", row[2]}};
      Sample s = SampleFromJson(j, task, r + 1);
      if (!ids.insert(s.id).second) throw DuplicateIdError(s.id);
      d.samples.push_back(std::move(s));
    }
  }
  d.provenance.source = path;
  return d;
}

void SaveDataset(const Dataset& dataset, const std::string& path,
                 DataFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  if (format == DataFormat::kJsonl) {
    out << ToJsonl(dataset);
    return;
  }
  if (dataset.task != Task::kClassification) {
    throw ConfigError("CSV output supports classification only");
  }
  out << "id,text,label\n";
  for (const Sample& s : dataset.samples) {
    out << CsvQuote(s.id) << ',' << CsvQuote(s.field("text").raw()) << ','
        << CsvQuote(s.label) << '\n';
  }
}

}  // namespace flint
