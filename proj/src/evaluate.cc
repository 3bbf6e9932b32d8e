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

#include "flint/evaluate.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "flint/error.h"
#include "flint/text.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

double Accuracy(const std::vector<std::string>& gold,
                const std::vector<std::string>& predicted) {
  if (gold.empty()) return 0;
  std::size_t right = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) right += gold[i] == predicted.at(i);
  return static_cast<double>(right) / static_cast<double>(gold.size());
}

namespace {

double F1(double tp, double fp, double fn) {
  const double p = tp + fp > 0 ? tp / (tp + fp) : 0;
  const double r = tp + fn > 0 ? tp / (tp + fn) : 0;
  return p + r > 0 ? 2 * p * r / (p + r) : 0;
}

}  // namespace

double MacroF1(const std::vector<std::string>& gold,
               const std::vector<std::string>& predicted) {
  const std::set<std::string> classes(gold.begin(), gold.end());
  if (classes.empty()) return 0;
  double sum = 0;
  for (const std::string& c : classes) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i] == c;
      const bool p = predicted.at(i) == c;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
    sum += F1(tp, fp, fn);
  }
  return sum / static_cast<double>(classes.size());
}

Prf SpanF1(const std::vector<std::vector<std::string>>& gold,
           const std::vector<std::vector<std::string>>& predicted) {
  double tp = 0, n_gold = 0, n_pred = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    using Key = std::tuple<std::size_t, std::size_t, std::string>;
    std::set<Key> g, p;
    for (const SpanLabel& s : BioToSpans("text", gold[i])) g.emplace(s.start, s.end, s.tag);
    for (const SpanLabel& s : BioToSpans("text", predicted.at(i))) {
      p.emplace(s.start, s.end, s.tag);
    }
    n_gold += static_cast<double>(g.size());
    n_pred += static_cast<double>(p.size());
    for (const Key& k : p) tp += g.count(k);
  }
  Prf out;
  if (n_gold == 0 && n_pred == 0) return {1, 1, 1};
  out.precision = n_pred > 0 ? tp / n_pred : 0;
  out.recall = n_gold > 0 ? tp / n_gold : 0;
  out.f1 = out.precision + out.recall > 0
               ? 2 * out.precision * out.recall / (out.precision + out.recall)
               : 0;
  return out;
}

Scores ComputeMetrics(Task task, const std::vector<const Sample*>& samples,
                      const std::vector<const Prediction*>& predictions) {
  Scores out;
  if (samples.empty()) return out;
  if (task == Task::kSequenceLabeling) {
    std::vector<std::vector<std::string>> gold, pred;
    bool bio = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      gold.push_back(samples[i]->tags);
      pred.push_back(predictions[i]->tags);
      bio = bio && IsBioScheme(samples[i]->tags);
    }
    if (bio) {
      const Prf prf = SpanF1(gold, pred);
      out["span_f1"] = prf.f1;
      out["span_precision"] = prf.precision;
      out["span_recall"] = prf.recall;
    } else {
      std::vector<std::string> g, p;
      for (std::size_t i = 0; i < gold.size(); ++i) {
        g.insert(g.end(), gold[i].begin(), gold[i].end());
        p.insert(p.end(), pred[i].begin(), pred[i].end());
        p.resize(g.size());
      }
      out["accuracy"] = Accuracy(g, p);
    }
    return out;
  }
  std::vector<std::string> gold, pred;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    gold.push_back(GoldLabel(*samples[i]));
    pred.push_back(predictions[i]->label);
  }
  out["accuracy"] = Accuracy(gold, pred);
  out["macro_f1"] = MacroF1(gold, pred);
  return out;
}

namespace {

Scores Degradation(const Scores& original, const Scores& transformed) {
  Scores out;
  for (const auto& [k, v] : original) {
    if (auto it = transformed.find(k); it != transformed.end()) out[k] = v - it->second;
  }
  return out;
}

ojson ScoresJson(const Scores& s) {
  ojson j = ojson::object();
  for (const auto& [k, v] : s) j[k] = v;
  return j;
}

Scores ScoresFrom(const json& j) {
  Scores s;
  for (const auto& [k, v] : j.items()) s[k] = v.get<double>();
  return s;
}

}  // namespace

ojson EvalRow::ToJson() const {
  ojson j;
  j["name"] = name;
  j["kind"] = kind;
  j["original_count"] = original_count;
  j["transformed_count"] = transformed_count;
  j["original"] = ScoresJson(original);
  j["transformed"] = ScoresJson(transformed);
  j["degradation"] = ScoresJson(degradation);
  return j;
}

EvalRow EvalRow::FromJson(const json& j) {
  EvalRow r;
  r.name = j.at("name").get<std::string>();
  r.kind = j.value("kind", std::string("transform"));
  r.original_count = j.value("original_count", std::size_t{0});
  r.transformed_count = j.value("transformed_count", std::size_t{0});
  r.original = ScoresFrom(j.value("original", json::object()));
  r.transformed = ScoresFrom(j.value("transformed", json::object()));
  r.degradation = j.contains("degradation") ? ScoresFrom(j["degradation"])
                                            : Degradation(r.original, r.transformed);
  return r;
}

Evaluator::Evaluator(Model& model, const Dataset& dataset)
    : model_(model), dataset_(dataset) {
  for (const Sample& s : dataset.samples) by_id_[s.id] = &s;
  std::vector<Prediction> preds = model.Predict(dataset.task, dataset.samples);
  if (preds.size() != dataset.samples.size()) {
    throw ProtocolError(model.id() + " returned the wrong number of predictions");
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    predictions_[dataset.samples[i].id] = std::move(preds[i]);
  }
}

const Prediction& Evaluator::prediction(const std::string& id) const {
  return predictions_.at(id);
}

Scores Evaluator::Overall() const {
  std::vector<const Sample*> samples;
  std::vector<const Prediction*> preds;
  for (const Sample& s : dataset_.samples) {
    samples.push_back(&s);
    preds.push_back(&predictions_.at(s.id));
  }
  return ComputeMetrics(dataset_.task, samples, preds);
}

EvalRow Evaluator::Transformed(const std::string& name,
                               const std::vector<TransformOutput>& outputs,
                               const std::string& kind) {
  EvalRow row;
  row.name = name;
  row.kind = kind;
  std::vector<const Sample*> orig;
  std::vector<const Prediction*> orig_preds;
  std::set<std::string> seen;
  std::vector<Sample> transformed;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const TransformOutput& o = outputs[i];
    transformed.push_back(o.transformed);
    if (o.original_id.empty() || !seen.insert(o.original_id).second) continue;
    auto it = by_id_.find(o.original_id);
    if (it == by_id_.end()) {
      throw SchemaError(i, "original_id",
                        "unknown original sample \"" + o.original_id + "\"");
    }
    orig.push_back(it->second);
    orig_preds.push_back(&predictions_.at(o.original_id));
  }
  const std::vector<Prediction> preds = model_.Predict(dataset_.task, transformed);
  std::vector<const Sample*> t;
  std::vector<const Prediction*> tp;
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    t.push_back(&transformed[i]);
    tp.push_back(&preds.at(i));
  }
  row.original_count = orig.size();
  row.transformed_count = transformed.size();
  row.original = ComputeMetrics(dataset_.task, orig, orig_preds);
  row.transformed = ComputeMetrics(dataset_.task, t, tp);
  row.degradation = Degradation(row.original, row.transformed);
  return row;
}

EvalRow Evaluator::Sliced(const Slice& slice) const {
  EvalRow row;
  row.name = slice.spec.Name();
  row.kind = "slice";
  std::vector<const Sample*> members;
  std::vector<const Prediction*> member_preds;
  for (const std::string& id : slice.members) {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
      throw SchemaError(members.size(), "id", "slice member \"" + id +
                                                  "\" is not in the dataset");
    }
    members.push_back(it->second);
    member_preds.push_back(&predictions_.at(id));
  }
  row.original_count = dataset_.samples.size();
  row.transformed_count = members.size();
  row.original = Overall();
  // Slices are not paired with the samples they came from.
  row.transformed = ComputeMetrics(dataset_.task, members, member_preds);
  return row;
}

// --- Attack ------------------------------------------------------------------

namespace {

// Index of `label` in the prediction's score vector.
std::size_t ClassIndex(const Prediction& p, const std::string& label) {
  if (!p.classes.empty()) {
    auto it = std::find(p.classes.begin(), p.classes.end(), label);
    if (it != p.classes.end()) return static_cast<std::size_t>(it - p.classes.begin());
  }
  return static_cast<std::size_t>(std::max_element(p.scores.begin(), p.scores.end()) -
                                  p.scores.begin());
}

double ScoreAt(const Prediction& p, std::size_t k) {
  if (k >= p.scores.size()) throw ProtocolError("score vector is too short");
  return p.scores[k];
}

}  // namespace

AttackResult GreedyAttack(Model& model, const Sample& sample,
                          const Resources& resources,
                          std::optional<std::size_t> budget) {
  if (sample.task == Task::kSequenceLabeling) {
    throw TaskError("the attack needs a sample-level label");
  }
  AttackResult r;
  r.id = sample.id;
  r.gold = GoldLabel(sample);
  const std::string field = sample.main_field_name();
  const TextField& text = sample.field(field);

  std::vector<std::size_t> words;
  std::vector<std::vector<std::string>> candidates;
  std::size_t n_candidates = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.is_frozen(i) || !IsAlphaWord(text.token(i))) continue;
    words.push_back(i);
    const std::string& w = text.token(i);
    const std::vector<std::string>* syn = resources.synonyms.Find(w);
    if (syn == nullptr) syn = resources.synonyms.Find(ToLower(w));
    std::vector<std::string> c;
    if (syn != nullptr) {
      for (const std::string& s : *syn) c.push_back(MatchCase(w, s));
    }
    n_candidates += c.size();
    candidates.push_back(std::move(c));
  }
  r.budget = budget.value_or(2 * words.size() + n_candidates);
  r.perturbed_text = text.raw();
  if (r.budget == 0) return r;

  auto query = [&](const Sample& s) {
    ++r.queries;
    std::vector<Prediction> p = model.Predict(sample.task, {s});
    if (p.size() != 1) throw ProtocolError(model.id() + " returned no prediction");
    if (p[0].scores.empty()) {
      throw NoScoreSupport(model.id() + " returns labels without scores");
    }
    return p[0];
  };

  const Prediction first = query(sample);
  r.original_prediction = r.final_prediction = first.label;
  if (first.label != r.gold) {
    r.skipped = true;
    return r;
  }
  const std::size_t k = ClassIndex(first, first.label);
  const double base = ScoreAt(first, k);

  // Deletion importance, one query per word.
  std::vector<double> importance(words.size(), 0.0);
  std::vector<std::size_t> order;
  for (std::size_t w = 0; w < words.size() && r.queries < r.budget; ++w) {
    EditTrace del;
    del.Add(field, Edit::Delete(words[w], words[w] + 1));
    importance[w] = base - ScoreAt(query(RemapLabels(sample, del)), k);
    order.push_back(w);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a] > importance[b];
  });

  double current = base;
  for (std::size_t w : order) {
    std::optional<std::string> best;
    double best_score = current;
    for (const std::string& cand : candidates[w]) {
      if (r.queries >= r.budget) return r;
      EditTrace trial = r.trace;
      trial.Add(field, Edit::Replace(words[w], words[w] + 1, {cand}));
      const Sample s = RemapLabels(sample, trial);
      const Prediction p = query(s);
      if (p.label != first.label) {
        r.trace = std::move(trial);
        r.success = true;
        r.final_prediction = p.label;
        r.perturbed_text = s.field(field).raw();
        ++r.words_changed;
        return r;
      }
      const double score = ScoreAt(p, k);
      if (score < best_score) {
        best_score = score;
        best = cand;
      }
    }
    if (best) {
      r.trace.Add(field, Edit::Replace(words[w], words[w] + 1, {*best}));
      current = best_score;
      ++r.words_changed;
      r.perturbed_text = RemapLabels(sample, r.trace).field(field).raw();
    }
  }
  return r;
}

bool ReplayAttack(Model& model, const Sample& original, const AttackResult& result) {
  const Sample s = RemapLabels(original, result.trace);
  const std::vector<Prediction> p = model.Predict(original.task, {s});
  return p.size() == 1 && p[0].label == result.final_prediction;
}

ojson AttackResult::ToJson() const {
  ojson j;
  j["id"] = id;
  j["gold"] = gold;
  j["original_prediction"] = original_prediction;
  j["final_prediction"] = final_prediction;
  j["success"] = success;
  j["skipped"] = skipped;
  j["perturbed_text"] = perturbed_text;
  j["queries"] = queries;
  j["budget"] = budget;
  j["words_changed"] = words_changed;
  j["trace"] = TraceToJson(trace);
  return j;
}

AttackResult AttackResult::FromJson(const json& j) {
  AttackResult r;
  r.id = j.at("id").get<std::string>();
  r.gold = j.value("gold", std::string());
  r.original_prediction = j.value("original_prediction", std::string());
  r.final_prediction = j.value("final_prediction", std::string());
  r.success = j.value("success", false);
  r.skipped = j.value("skipped", false);
  r.perturbed_text = j.value("perturbed_text", std::string());
  r.queries = j.value("queries", std::size_t{0});
  r.budget = j.value("budget", std::size_t{0});
  r.words_changed = j.value("words_changed", std::size_t{0});
  if (j.contains("trace")) r.trace = TraceFromJson(j["trace"]);
  return r;
}

AttackSummary Summarize(const std::vector<AttackResult>& results) {
  AttackSummary s;
  s.total = results.size();
  double queries = 0;
  for (const AttackResult& r : results) {
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    ++s.attempted;
    s.succeeded += r.success;
    queries += static_cast<double>(r.queries);
  }
  if (s.attempted > 0) {
    s.success_rate = static_cast<double>(s.succeeded) / static_cast<double>(s.attempted);
    s.mean_queries = queries / static_cast<double>(s.attempted);
  }
  if (s.total > 0) {
    const double n = static_cast<double>(s.total);
    s.accuracy_original = static_cast<double>(s.attempted) / n;
    s.accuracy_attacked = static_cast<double>(s.attempted - s.succeeded) / n;
  }
  return s;
}

ojson AttackSummary::ToJson() const {
  ojson j;
  j["total"] = total;
  j["skipped"] = skipped;
  j["attempted"] = attempted;
  j["succeeded"] = succeeded;
  j["success_rate"] = success_rate;
  j["mean_queries"] = mean_queries;
  j["accuracy_original"] = accuracy_original;
  j["accuracy_attacked"] = accuracy_attacked;
  return j;
}

}  // namespace flint
