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

#include "flint/subpopulation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "flint/error.h"
#include "flint/text.h"

namespace flint {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

const std::set<std::string> kAttributes = {
    "length",          "lm_score",      "phrase:negation",
    "phrase:question", "prejudice:man", "prejudice:woman"};

std::string_view EndName(SliceEnd e) {
  switch (e) {
    case SliceEnd::kTop:
      return "top";
    case SliceEnd::kBottom:
      return "bottom";
    case SliceEnd::kAll:
      return "all";
  }
  return "all";
}

SliceEnd ParseEnd(const std::string& s) {
  if (s == "top") return SliceEnd::kTop;
  if (s == "bottom") return SliceEnd::kBottom;
  if (s == "all") return SliceEnd::kAll;
  throw ConfigError("slice end must be top, bottom or all, got \"" + s + "\"");
}

std::vector<std::string> LowerTokens(const Sample& sample) {
  std::vector<std::string> out;
  for (const auto& [_, field] : sample.fields) {
    for (const std::string& t : field.texts()) out.push_back(ToLower(t));
  }
  return out;
}

// Canonical field order so that pair samples read premise then hypothesis.
std::vector<std::string> Sequence(const Sample& sample) {
  std::vector<std::string> out;
  for (const std::string& name : TaskFields(sample.task)) {
    for (const std::string& t : sample.field(name).texts()) {
      out.push_back(ToLower(t));
    }
  }
  return out;
}

}  // namespace

bool SliceSpec::percentile() const {
  return attribute == "length" || attribute == "lm_score";
}

void SliceSpec::Validate() const {
  if (!kAttributes.count(attribute)) {
    throw ConfigError("unknown slice attribute \"" + attribute + "\"");
  }
  if (percentile()) {
    if (end == SliceEnd::kAll) {
      throw ConfigError("slice " + attribute + " needs end top or bottom");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      throw ConfigError("slice fraction must be in (0, 1]");
    }
  }
}

std::string SliceSpec::Name() const {
  std::string name = attribute;
  std::replace(name.begin(), name.end(), ':', '-');
  if (!percentile()) return name;
  std::ostringstream os;
  os << name << '-' << EndName(end) << '-' << fraction;
  return os.str();
}

ojson SliceSpec::ToJson() const {
  ojson j;
  j["attribute"] = attribute;
  j["end"] = EndName(percentile() ? end : SliceEnd::kAll);
  if (percentile()) j["fraction"] = fraction;
  return j;
}

SliceSpec SliceSpec::FromJson(const json& j) {
  SliceSpec spec;
  try {
    spec.attribute = j.at("attribute").get<std::string>();
    spec.fraction = j.value("fraction", 0.2);
    const bool pct = spec.percentile();
    spec.end = ParseEnd(j.value("end", pct ? "top" : "all"));
    if (!pct) spec.end = SliceEnd::kAll;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad slice spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

std::size_t SliceSize(std::size_t n, double fraction) {
  const auto k = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 0.5 + 1e-9));
  return std::min(n, std::max<std::size_t>(1, k));
}

std::size_t SampleLength(const Sample& sample) {
  std::size_t n = 0;
  for (const auto& [_, field] : sample.fields) n += field.size();
  return n;
}

std::vector<double> BigramScores(const Dataset& dataset) {
  static const std::string kBegin = "<s>";
  static const std::string kEnd = "</s>";
  std::map<std::pair<std::string, std::string>, double> bigrams;
  std::map<std::string, double> history;
  std::set<std::string> vocab = {kEnd};
  std::vector<std::vector<std::string>> sequences;
  for (const Sample& s : dataset.samples) {
    std::vector<std::string> seq = {kBegin};
    for (std::string& t : Sequence(s)) seq.push_back(std::move(t));
    seq.push_back(kEnd);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      vocab.insert(seq[i]);
      bigrams[{seq[i - 1], seq[i]}] += 1;
      history[seq[i - 1]] += 1;
    }
    sequences.push_back(std::move(seq));
  }
  const double v = static_cast<double>(vocab.size());
  std::vector<double> scores;
  for (const auto& seq : sequences) {
    double total = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      auto b = bigrams.find({seq[i - 1], seq[i]});
      auto h = history.find(seq[i - 1]);
      const double num = (b == bigrams.end() ? 0 : b->second) + 1;
      const double den = (h == history.end() ? 0 : h->second) + v;
      total += std::log(num / den);
    }
    scores.push_back(-total / static_cast<double>(seq.size() - 1));
  }
  return scores;
}

bool HasNegation(const Sample& sample, const Resources& resources) {
  const auto& words = resources.negation_words;
  for (const std::string& t : LowerTokens(sample)) {
    if (std::find(words.begin(), words.end(), t) != words.end()) return true;
    if (t.size() > 3 && t.ends_with("n't")) return true;
  }
  return false;
}

bool IsQuestion(const Sample& sample, const Resources& resources) {
  const auto& words = resources.question_words;
  for (const auto& [_, field] : sample.fields) {
    if (field.empty()) continue;
    if (field.token(field.size() - 1) == "?") return true;
    const std::string first = ToLower(field.token(0));
    if (std::find(words.begin(), words.end(), first) != words.end()) return true;
  }
  return false;
}

std::string PronounGender(const Sample& sample) {
  static const std::set<std::string> kMan = {"he", "him", "his", "himself"};
  static const std::set<std::string> kWoman = {"she", "her", "hers", "herself"};
  bool man = false;
  bool woman = false;
  for (const std::string& t : LowerTokens(sample)) {
    man = man || kMan.count(t);
    woman = woman || kWoman.count(t);
  }
  if (man == woman) return "";
  return man ? "man" : "woman";
}

Slice MakeSlice(const Dataset& dataset, const SliceSpec& spec,
                const Resources& resources, const ScoreFn& scorer) {
  spec.Validate();
  Slice slice;
  slice.spec = spec;
  if (!spec.percentile()) slice.spec.end = SliceEnd::kAll;
  slice.parent = dataset.name;
  slice.parent_size = dataset.size();
  const std::size_t n = dataset.size();
  std::vector<bool> keep(n, false);
  if (spec.percentile() && n > 0) {
    std::vector<double> values;
    if (spec.attribute == "length") {
      for (const Sample& s : dataset.samples) {
        values.push_back(static_cast<double>(SampleLength(s)));
      }
    } else {
      values = scorer ? scorer(dataset) : BigramScores(dataset);
      if (values.size() != n) {
        throw ProtocolError("scorer returned " + std::to_string(values.size()) +
                            " scores for " + std::to_string(n) + " samples");
      }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] < values[b];
    });
    const std::size_t k = SliceSize(n, spec.fraction);
    for (std::size_t r = 0; r < k; ++r) {
      keep[spec.end == SliceEnd::kBottom ? order[r] : order[n - k + r]] = true;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const Sample& s = dataset.samples[i];
      if (spec.attribute == "phrase:negation") {
        keep[i] = HasNegation(s, resources);
      } else if (spec.attribute == "phrase:question") {
        keep[i] = IsQuestion(s, resources);
      } else {
        keep[i] = PronounGender(s) == spec.attribute.substr(10);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) slice.members.push_back(dataset.samples[i].id);
  }
  return slice;
}

Dataset SliceDataset(const Dataset& dataset, const Slice& slice) {
  const std::set<std::string> ids(slice.members.begin(), slice.members.end());
  Dataset out;
  out.name = dataset.name + "@" + slice.spec.Name();
  out.task = dataset.task;
  out.provenance = dataset.provenance;
  out.provenance.lineage.push_back("slice:" + slice.spec.Name());
  for (const Sample& s : dataset.samples) {
    if (ids.count(s.id)) out.samples.push_back(s);
  }
  return out;
}

std::string SliceToJsonl(const Slice& slice) {
  ojson header;
  header["slice"] = slice.spec.ToJson();
  header["name"] = slice.spec.Name();
  header["parent"] = slice.parent;
  header["parent_size"] = slice.parent_size;
  header["size"] = slice.members.size();
  std::string out = header.dump() + "\n";
  for (const std::string& id : slice.members) {
    out += ojson{{"id", id}}.dump() + "\n";
  }
  return out;
}

Slice SliceFromJsonl(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Slice slice;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++record;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw SchemaError(record, "", e.what());
    }
    if (record == 1) {
      if (!j.contains("slice")) throw SchemaError(1, "slice", "missing header");
      slice.spec = SliceSpec::FromJson(j.at("slice"));
      slice.parent = j.value("parent", std::string());
      slice.parent_size = j.value("parent_size", std::size_t{0});
      continue;
    }
    if (!j.contains("id") || !j.at("id").is_string()) {
      throw SchemaError(record, "id", "expected a string id");
    }
    slice.members.push_back(j.at("id").get<std::string>());
  }
  if (record == 0) throw SchemaError(1, "slice", "empty slice file");
  return slice;
}

}  // namespace flint
