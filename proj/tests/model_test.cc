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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "flint/error.h"
#include "flint/evaluate.h"
#include "flint/random.h"
#include "flint/transform.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace flint {
namespace {

Sample Cls(const std::string& id, const std::string& text, const std::string& label) {
  Sample s = MakeTextSample(id, Task::kClassification, text);
  s.label = label;
  return s;
}

Dataset Load(const std::string& file, Task task = Task::kClassification) {
  return LoadDataset(std::string(FLINT_DATA_DIR) + "/" + file, DataFormat::kJsonl, task);
}

// --- Builtin models ----------------------------------------------------------

TEST(KeywordModelTest, PredictsByKeywordHits) {
  KeywordModel m({{"negative", {"bad"}}, {"positive", {"good"}}}, "negative", true);
  const auto p = m.Predict(Task::kClassification,
                           {Cls("a", "a good film", "positive"), Cls("b", "a bad film", "negative"),
                            Cls("c", "a GOOD film", "positive"), Cls("d", "good and bad", "x")});
  EXPECT_EQ(p[0].label, "positive");
  EXPECT_EQ(p[1].label, "negative");
  EXPECT_EQ(p[2].label, "negative");  // case-sensitive miss falls back to majority
  EXPECT_EQ(p[3].label, "negative");  // tie goes to the majority
  // (r + 1) normalised: positive has one hit.
  EXPECT_THAT(p[0].classes, ::testing::ElementsAre("negative", "positive"));
  EXPECT_NEAR(p[0].scores[1], 2.0 / 3, 1e-12);
  // Tie: majority lifted to max + 1.5 against max + 1.
  EXPECT_NEAR(p[3].scores[0], 2.5 / 4.5, 1e-12);
  for (const Prediction& x : p) {
    EXPECT_EQ(x.classes[std::max_element(x.scores.begin(), x.scores.end()) -
                        x.scores.begin()],
              x.label);
  }
}

TEST(KeywordModelTest, CaseInsensitiveVariant) {
  KeywordModel m({{"negative", {"bad"}}, {"positive", {"Good"}}}, "negative", false);
  EXPECT_EQ(m.id(), "builtin:keyword-ci");
  EXPECT_EQ(m.Predict(Task::kClassification, {Cls("a", "A GOOD film", "positive")})[0].label,
            "positive");
  EXPECT_THROW(m.Predict(Task::kSequenceLabeling, {}), TaskError);
}

TEST(MajorityTest, GoldMajorityWithLexicographicTies) {
  Dataset d;
  d.task = Task::kClassification;
  d.samples = {Cls("a", "x", "pos"), Cls("b", "x", "neg"), Cls("c", "x", "pos"),
               Cls("d", "x", "neg")};
  EXPECT_EQ(MajorityLabel(d), "neg");
  d.samples.push_back(Cls("e", "x", "pos"));
  EXPECT_EQ(MajorityLabel(d), "pos");
  MajorityModel m("pos");
  EXPECT_EQ(m.Predict(Task::kClassification, d.samples)[3].label, "pos");
}

TEST(GazetteerTaggerTest, LongestMatchBio) {
  Sample s;
  s.id = "n";
  s.task = Task::kSequenceLabeling;
  s.fields["text"] = TextField::FromTokens({"Tom", "flew", "to", "New", "York", "."});
  s.tags = std::vector<std::string>(6, "O");
  GazetteerTagger tagger(DefaultResources().gazetteer);
  EXPECT_THAT(tagger.Predict(Task::kSequenceLabeling, {s})[0].tags,
              ::testing::ElementsAre("B-PER", "O", "O", "B-LOC", "I-LOC", "O"));
  EXPECT_THROW(tagger.Predict(Task::kClassification, {}), TaskError);
}

TEST(MakeModelTest, ParsesSpecs) {
  ModelOptions o;
  o.majority_class = "negative";
  EXPECT_EQ(MakeModel("builtin:keyword", o)->id(), "builtin:keyword");
  EXPECT_EQ(MakeModel("builtin:keyword-ci", o)->id(), "builtin:keyword-ci");
  EXPECT_EQ(MakeModel("builtin:majority", o)->id(), "builtin:majority");
  EXPECT_EQ(MakeModel("builtin:gazetteer", o)->id(), "builtin:gazetteer");
  EXPECT_EQ(MakeModel("exec:cat", o)->id(), "exec:cat");
  EXPECT_EQ(MakeModel("tcp:localhost:9000", o)->id(), "tcp:localhost:9000");
  EXPECT_THROW(MakeModel("builtin:bert", o), ConfigError);
  EXPECT_THROW(MakeModel("tcp:localhost", o), ConfigError);
  EXPECT_THROW(MakeModel("tcp:localhost:99999", o), ConfigError);
  EXPECT_THROW(MakeModel("exec:", o), ConfigError);
  EXPECT_THROW(MakeModel("builtin:majority", ModelOptions{}), ConfigError);
  const Dataset d = Load("toy_sa.jsonl");
  auto m = MakeModel("builtin:majority", ModelOptions{}, &d);
  EXPECT_EQ(m->Predict(Task::kClassification, {d.samples[0]})[0].label, "negative");
  EXPECT_THROW(m->Score(Task::kClassification, {}, "perplexity"), NoScoreSupport);
}

// --- Metric oracles ------------------------------------------------------------

// Spans read straight off the tag strings: a span starts at B-X, or at I-X
// not continuing an X span, and runs over the following I-X tags.
std::set<std::tuple<std::size_t, std::size_t, std::string>> OracleSpans(
    const std::vector<std::string>& tags) {
  std::set<std::tuple<std::size_t, std::size_t, std::string>> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == "O") continue;
    const std::string type = tags[i].substr(2);
    const bool continues = tags[i][0] == 'I' && i > 0 && tags[i - 1] != "O" &&
                           tags[i - 1].substr(2) == type;
    if (continues) continue;
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j] == "I-" + type) ++j;
    out.emplace(i, j, type);
  }
  return out;
}

TEST(MetricsTest, MatchBruteForceCountsOnRandomCases) {
  std::mt19937 gen(2024);
  const std::vector<std::string> labels = {"a", "b", "c"};
  const std::vector<std::string> tags = {"O", "B-PER", "I-PER", "B-LOC", "I-LOC"};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    std::vector<std::string> gold, pred;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back(labels[gen() % 3]);
      pred.push_back(labels[gen() % 3]);
    }
    double right = 0;
    for (std::size_t i = 0; i < n; ++i) right += gold[i] == pred[i];
    EXPECT_NEAR(Accuracy(gold, pred), right / double(n), 1e-12);

    double f1_sum = 0;
    std::set<std::string> present(gold.begin(), gold.end());
    for (const std::string& c : present) {
      double tp = 0, pp = 0, gp = 0;
      for (std::size_t i = 0; i < n; ++i) {
        tp += gold[i] == c && pred[i] == c;
        pp += pred[i] == c;
        gp += gold[i] == c;
      }
      const double p = pp ? tp / pp : 0, r = gp ? tp / gp : 0;
      f1_sum += p + r ? 2 * p * r / (p + r) : 0;
    }
    EXPECT_NEAR(MacroF1(gold, pred), f1_sum / double(present.size()), 1e-12);

    std::vector<std::vector<std::string>> gs, ps;
    double tp = 0, ng = 0, np = 0;
    for (int k = 0; k < 3; ++k) {
      std::vector<std::string> g, p;
      const std::size_t len = 1 + gen() % 6;
      for (std::size_t i = 0; i < len; ++i) {
        g.push_back(tags[gen() % tags.size()]);
        p.push_back(tags[gen() % tags.size()]);
      }
      const auto og = OracleSpans(g), op = OracleSpans(p);
      ng += double(og.size());
      np += double(op.size());
      for (const auto& s : op) tp += og.count(s);
      gs.push_back(g);
      ps.push_back(p);
    }
    const Prf prf = SpanF1(gs, ps);
    if (ng == 0 && np == 0) {
      EXPECT_EQ(prf.f1, 1.0);
      continue;
    }
    const double p = np ? tp / np : 0, r = ng ? tp / ng : 0;
    EXPECT_NEAR(prf.precision, p, 1e-12);
    EXPECT_NEAR(prf.recall, r, 1e-12);
    EXPECT_NEAR(prf.f1, p + r ? 2 * p * r / (p + r) : 0, 1e-12);
  }
}

TEST(MetricsTest, StrayInsideTagCountsAsSpanStart) {
  const Prf prf = SpanF1({{"I-PER", "I-PER", "O"}}, {{"B-PER", "I-PER", "O"}});
  EXPECT_EQ(prf.f1, 1.0);
}

// --- Evaluation ----------------------------------------------------------------

TEST(EvaluatorTest, ConstructedDegradationUnderUppercase) {
  const Dataset d = Load("toy_sa.jsonl");
  const auto upper = MakeTransform("WordCase:upper");
  std::vector<TransformOutput> outs;
  for (const Sample& s : d.samples) {
    for (auto& o : upper->Apply(s, SampleSeed(42, s.id, "WordCase:upper"))) {
      outs.push_back(std::move(o));
    }
  }
  ASSERT_EQ(outs.size(), 100u);
  const std::string majority = MajorityLabel(d);
  double share = 0;
  for (const Sample& s : d.samples) share += s.label == majority;
  share /= 100;

  auto cs = MakeModel("builtin:keyword", ModelOptions{}, &d);
  Evaluator e1(*cs, d);
  const EvalRow r1 = e1.Transformed("WordCase:upper", outs);
  EXPECT_EQ(r1.original.at("accuracy"), 1.0);
  EXPECT_EQ(r1.transformed.at("accuracy"), share);
  EXPECT_EQ(r1.original_count, 100u);

  auto ci = MakeModel("builtin:keyword-ci", ModelOptions{}, &d);
  Evaluator e2(*ci, d);
  const EvalRow r2 = e2.Transformed("WordCase:upper", outs);
  EXPECT_EQ(r2.degradation.at("accuracy"), 0.0);
}

TEST(EvaluatorTest, PairsOnlyTransformedOriginals) {
  Dataset d;
  d.task = Task::kClassification;
  d.samples = {Cls("a", "good", "positive"), Cls("b", "bad", "negative"),
               Cls("c", "good", "negative")};
  MajorityModel model("positive");
  Evaluator e(model, d);
  EXPECT_NEAR(e.Overall().at("accuracy"), 1.0 / 3, 1e-12);
  TransformOutput o;
  o.original_id = "a";
  o.transformed = Cls("a::T", "GOOD", "positive");
  const EvalRow r = e.Transformed("T", {o});
  EXPECT_EQ(r.original_count, 1u);
  EXPECT_EQ(r.original.at("accuracy"), 1.0);
  o.original_id = "zzz";
  EXPECT_THROW(e.Transformed("T", {o}), SchemaError);

  Slice s;
  s.spec = {"length", SliceEnd::kTop, 0.5};
  s.members = {"b", "c"};
  const EvalRow sr = e.Sliced(s);
  EXPECT_EQ(sr.kind, "slice");
  EXPECT_EQ(sr.transformed.at("accuracy"), 0.0);
  EXPECT_TRUE(sr.degradation.empty());
  EXPECT_EQ(EvalRow::FromJson(nlohmann::json::parse(r.ToJson().dump())).ToJson(), r.ToJson());
}

TEST(EvaluatorTest, SequenceLabelingUsesSpanF1) {
  const Dataset d = Load("ner.jsonl", Task::kSequenceLabeling);
  GazetteerTagger tagger(DefaultResources().gazetteer);
  Evaluator e(tagger, d);
  const Scores s = e.Overall();
  EXPECT_EQ(s.count("span_f1"), 1u);
  EXPECT_EQ(s.at("span_f1"), 1.0);  // every corpus entity is in the gazetteer
  const Dataset pos = Load("pos.jsonl", Task::kSequenceLabeling);
  MajorityModel o("O");
  Evaluator e2(o, pos);
  EXPECT_EQ(e2.Overall().count("accuracy"), 1u);
}

// --- Attack --------------------------------------------------------------------

TEST(AttackTest, FlipsEveryConstructedPositive) {
  const Dataset d = Load("attack.jsonl");
  ModelOptions o;
  o.majority_class = "negative";
  auto model = MakeModel("builtin:keyword", o);
  std::vector<AttackResult> results;
  for (const Sample& s : d.samples) {
    const AttackResult r = GreedyAttack(*model, s, DefaultResources());
    std::size_t words = 0;
    for (const std::string& t : s.field("text").texts()) words += IsAlphaWord(t);
    EXPECT_TRUE(r.success) << s.id;
    EXPECT_LE(r.queries, words + 2) << s.id;
    EXPECT_EQ(r.final_prediction, "negative");
    EXPECT_THAT(r.perturbed_text, ::testing::HasSubstr("fine"));
    EXPECT_TRUE(ReplayAttack(*model, s, r)) << s.id;
    const AttackResult back = AttackResult::FromJson(nlohmann::json::parse(r.ToJson().dump()));
    EXPECT_TRUE(ReplayAttack(*model, s, back));
    results.push_back(r);
  }
  const AttackSummary sum = Summarize(results);
  EXPECT_EQ(sum.succeeded, 20u);
  EXPECT_EQ(sum.success_rate, 1.0);
  EXPECT_EQ(sum.accuracy_attacked, 0.0);
}

TEST(AttackTest, BudgetAndSkips) {
  ModelOptions o;
  o.majority_class = "negative";
  auto model = MakeModel("builtin:keyword", o);
  const Sample s = Cls("a", "a good movie", "positive");
  const AttackResult none = GreedyAttack(*model, s, DefaultResources(), 0);
  EXPECT_FALSE(none.success);
  EXPECT_EQ(none.queries, 0u);
  const AttackResult tight = GreedyAttack(*model, s, DefaultResources(), 3);
  EXPECT_FALSE(tight.success);
  EXPECT_LE(tight.queries, 3u);
  const AttackResult wrong = GreedyAttack(*model, Cls("b", "a good movie", "negative"),
                                          DefaultResources());
  EXPECT_TRUE(wrong.skipped);
  EXPECT_EQ(wrong.queries, 1u);
}

class LabelsOnly : public Model {
 public:
  std::string id() const override { return "labels-only"; }
  std::vector<Prediction> Predict(Task, const std::vector<Sample>& s) override {
    return std::vector<Prediction>(s.size(), Prediction{"positive", {}, {}, {}});
  }
};

TEST(AttackTest, NeedsScoresAndLabels) {
  LabelsOnly model;
  EXPECT_THROW(GreedyAttack(model, Cls("a", "a good movie", "positive"), DefaultResources()),
               NoScoreSupport);
  Sample seq;
  seq.id = "n";
  seq.task = Task::kSequenceLabeling;
  seq.fields["text"] = TextField::FromTokens({"Tom"});
  seq.tags = {"B-PER"};
  EXPECT_THROW(GreedyAttack(model, seq, DefaultResources()), TaskError);
}

}  // namespace
}  // namespace flint
