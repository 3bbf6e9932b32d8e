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

// Models under test. A model is either builtin (baselines used by the
// acceptance suite) or an external process speaking the adapter protocol.
//
// Model specs:
//   builtin:majority     constant majority-class prediction
//   builtin:keyword      class with most exact-case keyword hits
//   builtin:keyword-ci   same, case-insensitive
//   builtin:gazetteer    longest-match BIO tagger over the main gazetteer
//   exec:<command>       child process over stdin/stdout
//   tcp:<host>:<port>    socket with the same line protocol

#ifndef FLINT_MODEL_H_
#define FLINT_MODEL_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flint/dataset.h"
#include "flint/resources.h"
#include "flint/sample.h"

namespace flint {

struct Prediction {
  std::string label;               // classification tasks
  std::vector<std::string> tags;   // sequence labeling
  std::vector<double> scores;      // per-class scores, optional
  // Class names for `scores`; empty when the model does not say.
  std::vector<std::string> classes;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

class Model {
 public:
  virtual ~Model() = default;
  virtual std::string id() const = 0;
  // One prediction per sample, in order.
  virtual std::vector<Prediction> Predict(Task task,
                                          const std::vector<Sample>& samples) = 0;
  // Fluency scores ("score" requests). Builtins throw NoScoreSupport.
  virtual std::vector<double> Score(Task task, const std::vector<Sample>& samples,
                                    const std::string& metric);
  // Text rewrites ("rewrite" requests). Builtins throw AdapterUnavailable.
  virtual std::vector<std::string> Rewrite(Task task,
                                           const std::vector<std::string>& texts);
};

struct ModelOptions {
  std::optional<std::string> majority_class;
  // class -> keywords; empty means the bundled keyword lists.
  std::map<std::string, std::vector<std::string>> keywords;
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  const Resources* resources = nullptr;  // null: bundled
};

// Gold label of a classification-style sample: the label, or the target
// aspect's polarity.
std::string GoldLabel(const Sample& sample);

// Most frequent gold label; ties go to the lexicographically smallest.
std::string MajorityLabel(const Dataset& dataset);

class MajorityModel : public Model {
 public:
  explicit MajorityModel(std::string label) : label_(std::move(label)) {}
  std::string id() const override { return "builtin:majority"; }
  std::vector<Prediction> Predict(Task task,
                                  const std::vector<Sample>& samples) override;

 private:
  std::string label_;
};

// Counts keyword hits per class over every text token. The class with the
// most hits wins; no hits or a tie gives the majority class. Scores are
// (hits + 1) normalised, with the majority class lifted half a point above
// the tied maximum so the argmax matches the prediction.
class KeywordModel : public Model {
 public:
  KeywordModel(std::map<std::string, std::vector<std::string>> keywords,
               std::string majority, bool case_sensitive);
  std::string id() const override;
  std::vector<Prediction> Predict(Task task,
                                  const std::vector<Sample>& samples) override;
  const std::vector<std::string>& classes() const { return classes_; }

 private:
  std::map<std::string, std::vector<std::string>> keywords_;
  std::string majority_;
  bool case_sensitive_;
  std::vector<std::string> classes_;
};

class GazetteerTagger : public Model {
 public:
  explicit GazetteerTagger(const Gazetteer& gazetteer) : gazetteer_(gazetteer) {}
  std::string id() const override { return "builtin:gazetteer"; }
  std::vector<Prediction> Predict(Task task,
                                  const std::vector<Sample>& samples) override;

 private:
  const Gazetteer& gazetteer_;
};

// Builds a model from its spec. `gold` supplies the majority class when
// options do not. Throws ConfigError on an unknown spec.
std::unique_ptr<Model> MakeModel(const std::string& spec,
                                 const ModelOptions& options,
                                 const Dataset* gold = nullptr);

}  // namespace flint

#endif  // FLINT_MODEL_H_
