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

// Task metrics, paired evaluation of transformed sets and slices, and the
// greedy synonym-substitution attack.

#ifndef FLINT_EVALUATE_H_
#define FLINT_EVALUATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/dataset.h"
#include "flint/edit_trace.h"
#include "flint/model.h"
#include "flint/resources.h"
#include "flint/subpopulation.h"
#include "flint/transform.h"

namespace flint {

using Scores = std::map<std::string, double>;

double Accuracy(const std::vector<std::string>& gold,
                const std::vector<std::string>& predicted);
// Mean per-class F1 over the classes present in `gold`.
double MacroF1(const std::vector<std::string>& gold,
               const std::vector<std::string>& predicted);

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};
// Micro-averaged exact-match entity F1 over BIO sequences. A stray I- tag
// opens a new span. With no gold and no predicted spans the score is 1.
Prf SpanF1(const std::vector<std::vector<std::string>>& gold,
           const std::vector<std::vector<std::string>>& predicted);

// accuracy and macro_f1 for classification tasks; span_f1 (with precision
// and recall) for BIO tagging; token accuracy for other tag sets.
Scores ComputeMetrics(Task task, const std::vector<const Sample*>& samples,
                      const std::vector<const Prediction*>& predictions);

struct EvalRow {
  std::string name;
  std::string kind;  // transform | combination | slice
  std::size_t original_count = 0;
  std::size_t transformed_count = 0;
  Scores original;
  Scores transformed;
  Scores degradation;  // original - transformed, shared metrics only

  nlohmann::ordered_json ToJson() const;
  static EvalRow FromJson(const nlohmann::json& j);
};

// Predicts the dataset once, then scores transformed sets against the
// originals they came from.
class Evaluator {
 public:
  Evaluator(Model& model, const Dataset& dataset);

  Scores Overall() const;
  // Paired: the original side covers only the samples the outputs derive
  // from. Generated samples have no original side.
  EvalRow Transformed(const std::string& name,
                      const std::vector<TransformOutput>& outputs,
                      const std::string& kind = "transform");
  // The whole dataset against the slice members.
  EvalRow Sliced(const Slice& slice) const;
  const Prediction& prediction(const std::string& id) const;

 private:
  Model& model_;
  const Dataset& dataset_;
  std::map<std::string, const Sample*> by_id_;
  std::map<std::string, Prediction> predictions_;
};

// --- Attack ------------------------------------------------------------------

struct AttackResult {
  std::string id;
  std::string gold;
  std::string original_prediction;
  std::string final_prediction;
  bool success = false;
  bool skipped = false;  // already misclassified; nothing attacked
  EditTrace trace;       // substitutions against the original sample
  std::string perturbed_text;
  std::size_t queries = 0;  // including the initial prediction
  std::size_t budget = 0;
  std::size_t words_changed = 0;

  nlohmann::ordered_json ToJson() const;
  static AttackResult FromJson(const nlohmann::json& j);
};

// Ranks words by the drop in the predicted class's score when deleted, then
// tries each word's synonyms in lexicon order, returning at the first label
// flip. Without a flip the best-scoring substitution is kept and the next
// word is tried. The default budget is 2 * words + candidates. Throws
// NoScoreSupport when the model returns labels only and TaskError for
// sequence labeling.
AttackResult GreedyAttack(Model& model, const Sample& sample,
                          const Resources& resources,
                          std::optional<std::size_t> budget = std::nullopt);

// Re-applies a recorded attack and checks the model still gives the recorded
// final prediction.
bool ReplayAttack(Model& model, const Sample& original, const AttackResult& result);

struct AttackSummary {
  std::size_t total = 0;
  std::size_t skipped = 0;
  std::size_t attempted = 0;
  std::size_t succeeded = 0;
  double success_rate = 0;         // succeeded / attempted
  double mean_queries = 0;         // over attempted
  double accuracy_original = 0;
  double accuracy_attacked = 0;

  nlohmann::ordered_json ToJson() const;
};
AttackSummary Summarize(const std::vector<AttackResult>& results);

}  // namespace flint

#endif  // FLINT_EVALUATE_H_
