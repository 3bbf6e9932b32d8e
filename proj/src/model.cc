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

#include "flint/model.h"

#include <algorithm>
#include <set>
#include <utility>

#include "flint/adapter.h"
#include "flint/error.h"
#include "flint/text.h"

namespace flint {

std::vector<double> Model::Score(Task, const std::vector<Sample>&,
                                 const std::string& metric) {
  throw NoScoreSupport(id() + " cannot score \"" + metric + "\"");
}

std::vector<std::string> Model::Rewrite(Task, const std::vector<std::string>&) {
  throw AdapterUnavailable(id() + " cannot rewrite text");
}

std::string GoldLabel(const Sample& sample) {
  if (sample.task == Task::kAspectSentiment) {
    if (sample.target >= sample.aspects.size()) {
      throw TaskError("sample " + sample.id + " has no target aspect");
    }
    return sample.aspects[sample.target].polarity;
  }
  if (sample.task == Task::kSequenceLabeling) {
    throw TaskError("sequence labeling has no sample-level label");
  }
  return sample.label;
}

std::string MajorityLabel(const Dataset& dataset) {
  std::map<std::string, std::size_t> counts;
  for (const Sample& s : dataset.samples) ++counts[GoldLabel(s)];
  std::string best;
  std::size_t best_count = 0;
  // std::map iterates in lexicographic order, so strict > keeps the
  // smallest label among ties.
  for (const auto& [label, n] : counts) {
    if (n > best_count) {
      best = label;
      best_count = n;
    }
  }
  if (best_count == 0) throw ConfigError("cannot take a majority of no labels");
  return best;
}

std::vector<Prediction> MajorityModel::Predict(Task task,
                                               const std::vector<Sample>& samples) {
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) {
    Prediction p;
    if (task == Task::kSequenceLabeling) {
      p.tags.assign(s.field("text").size(), "O");
    } else {
      p.label = label_;
      p.scores = {1.0};
      p.classes = {label_};
    }
    out.push_back(std::move(p));
  }
  return out;
}

KeywordModel::KeywordModel(std::map<std::string, std::vector<std::string>> keywords,
                           std::string majority, bool case_sensitive)
    : keywords_(std::move(keywords)),
      majority_(std::move(majority)),
      case_sensitive_(case_sensitive) {
  std::set<std::string> classes;
  for (auto& [label, words] : keywords_) {
    classes.insert(label);
    if (!case_sensitive_) {
      for (std::string& w : words) w = ToLower(w);
    }
  }
  classes.insert(majority_);
  classes_.assign(classes.begin(), classes.end());
}

std::string KeywordModel::id() const {
  return case_sensitive_ ? "builtin:keyword" : "builtin:keyword-ci";
}

std::vector<Prediction> KeywordModel::Predict(Task task,
                                              const std::vector<Sample>& samples) {
  if (task == Task::kSequenceLabeling) {
    throw TaskError("the keyword model does not tag sequences");
  }
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) {
    std::vector<double> hits(classes_.size(), 0.0);
    for (const auto& [name, field] : s.fields) {
      for (std::string word : field.texts()) {
        if (!case_sensitive_) word = ToLower(word);
        for (std::size_t c = 0; c < classes_.size(); ++c) {
          auto it = keywords_.find(classes_[c]);
          if (it == keywords_.end()) continue;
          hits[c] += static_cast<double>(
              std::count(it->second.begin(), it->second.end(), word));
        }
      }
    }
    const double max = *std::max_element(hits.begin(), hits.end());
    const auto winners = std::count(hits.begin(), hits.end(), max);
    Prediction p;
    p.classes = classes_;
    std::vector<double> weight(hits.size());
    for (std::size_t c = 0; c < hits.size(); ++c) weight[c] = hits[c] + 1.0;
    if (winners == 1) {
      p.label = classes_[std::max_element(hits.begin(), hits.end()) - hits.begin()];
    } else {
      p.label = majority_;
      const auto m = std::find(classes_.begin(), classes_.end(), majority_) -
                     classes_.begin();
      weight[m] = max + 1.5;
    }
    double total = 0;
    for (double w : weight) total += w;
    for (double w : weight) p.scores.push_back(w / total);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> GazetteerTagger::Predict(Task task,
                                                 const std::vector<Sample>& samples) {
  if (task != Task::kSequenceLabeling) {
    throw TaskError("the gazetteer tagger only tags sequences");
  }
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) {
    const std::vector<std::string> tokens = s.field("text").texts();
    Prediction p;
    p.tags.assign(tokens.size(), "O");
    for (std::size_t i = 0; i < tokens.size();) {
      const GazetteerEntry* entry = nullptr;
      const std::size_t n = gazetteer_.LongestMatch(tokens, i, &entry);
      if (n == 0) {
        ++i;
        continue;
      }
      p.tags[i] = "B-" + entry->category;
      for (std::size_t k = 1; k < n; ++k) p.tags[i + k] = "I-" + entry->category;
      i += n;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::unique_ptr<Model> MakeModel(const std::string& spec,
                                 const ModelOptions& options,
                                 const Dataset* gold) {
  const Resources& res =
      options.resources != nullptr ? *options.resources : DefaultResources();
  auto majority = [&]() -> std::string {
    if (options.majority_class) return *options.majority_class;
    if (gold == nullptr) {
      throw ConfigError(spec + " needs majority_class or a labeled dataset");
    }
    return MajorityLabel(*gold);
  };
  if (spec == "builtin:majority") return std::make_unique<MajorityModel>(majority());
  if (spec == "builtin:keyword" || spec == "builtin:keyword-ci") {
    auto keywords = options.keywords.empty() ? res.keywords : options.keywords;
    if (keywords.empty()) throw ConfigError(spec + " has no keyword lists");
    return std::make_unique<KeywordModel>(std::move(keywords), majority(),
                                          spec == "builtin:keyword");
  }
  if (spec == "builtin:gazetteer") {
    return std::make_unique<GazetteerTagger>(res.gazetteer);
  }
  if (spec.starts_with("exec:") && spec.size() > 5) {
    return std::make_unique<ExternalModel>(spec, MakeExecTransport(spec.substr(5)),
                                           options.batch_size, options.timeout);
  }
  if (spec.starts_with("tcp:")) {
    const std::string rest = spec.substr(4);
    const auto colon = rest.rfind(':');
    if (colon != std::string::npos && colon > 0) {
      int port = 0;
      try {
        std::size_t used = 0;
        port = std::stoi(rest.substr(colon + 1), &used);
        if (used != rest.size() - colon - 1) port = 0;
      } catch (const std::exception&) {
        port = 0;
      }
      if (port > 0 && port < 65536) {
        return std::make_unique<ExternalModel>(
            spec, MakeTcpTransport(rest.substr(0, colon), port),
            options.batch_size, options.timeout);
      }
    }
  }
  throw ConfigError("unknown model spec \"" + spec + "\"");
}

}  // namespace flint
