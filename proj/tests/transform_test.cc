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

#include "flint/transform.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "example_fixtures.h"
#include "flint/error.h"
#include "flint/random.h"
#include "flint/resources.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace flint {
namespace {

using ::testing::ElementsAre;

Sample Cls(const std::string& text, const std::string& label = "positive") {
  Sample s = MakeTextSample("fx", Task::kClassification, text);
  s.label = label;
  return s;
}

Sample Seq(std::vector<std::string> tokens, std::vector<std::string> tags) {
  Sample s;
  s.id = "fx";
  s.task = Task::kSequenceLabeling;
  s.fields["text"] = TextField::FromTokens(tokens);
  s.tags = std::move(tags);
  return s;
}

Sample Pair(const std::string& premise, const std::string& hypothesis,
            const std::string& label = "entailment") {
  Sample s;
  s.id = "fx";
  s.task = Task::kPairClassification;
  s.fields["premise"] = TextField::FromRaw(premise);
  s.fields["hypothesis"] = TextField::FromRaw(hypothesis);
  s.label = label;
  return s;
}

Sample Burgers() {
  Sample s;
  s.id = "fx";
  s.task = Task::kAspectSentiment;
  s.fields["text"] = TextField::FromRaw("Tasty burgers, and crispy fries");
  s.aspects = {{"burgers", 1, 2, "positive"}, {"fries", 5, 6, "positive"}};
  s.target = 0;
  return s;
}

// First output of `name` on `sample` under global seed `global`.
TransformOutput Apply1(const std::string& name, const Sample& sample,
                       std::uint64_t global, const TransformOptions& o = {}) {
  return MakeTransform(name, o)->Apply(sample, SampleSeed(global, sample.id, name)).at(0);
}

std::string Text(const TransformOutput& o) {
  return o.transformed.main_field().raw();
}

// Plain dynamic-programming Levenshtein distance over bytes.
std::size_t Levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

// --- Fixtures under frozen seeds -------------------------------------------

using testing::Fixture;

class FixtureTest : public ::testing::TestWithParam<Fixture> {};

TEST_P(FixtureTest, ProducesExpectedText) {
  const Fixture& f = GetParam();
  EXPECT_EQ(Text(Apply1(f.transform, f.input, f.seed)), f.expected);
}

INSTANTIATE_TEST_SUITE_P(Examples, FixtureTest,
                         ::testing::ValuesIn(testing::ExampleFixtures()));

TEST(OverlapTest, JudgesPairUnderFrozenSeed) {
  const auto out = MakeTransform("Overlap")->Generate(
      Task::kPairClassification, 1, SampleSeed(testing::kJudgesSeed, "", "Overlap"));
  ASSERT_EQ(out.size(), 1u);
  const Sample& s = out[0].transformed;
  EXPECT_EQ(s.field("premise").raw(), "The judges heard the actors resigned");
  EXPECT_EQ(s.field("hypothesis").raw(), "The judges heard the actors");
  EXPECT_EQ(s.meta.at("hans_label"), "non-entailment");
}

TEST(OverlapTest, HypothesisIsContiguousSubsequence) {
  const auto out =
      MakeTransform("Overlap")->Generate(Task::kPairClassification, 200, 9);
  ASSERT_EQ(out.size(), 200u);
  for (const TransformOutput& o : out) {
    const auto p = o.transformed.field("premise").texts();
    auto h = o.transformed.field("hypothesis").texts();
    h[0] = ToLower(h[0]);
    std::vector<std::string> lp = p;
    lp[0] = ToLower(lp[0]);
    // "The N2 ..." starts with a capital where the premise has "the".
    EXPECT_NE(std::search(lp.begin(), lp.end(), h.begin(), h.end()), lp.end())
        << o.transformed.field("premise").raw();
  }
}

// --- Postconditions over many seeds -----------------------------------------

const char* kWords[] = {"Ireland", "word",    "language", "processing",
                        "robust",  "quickly", "sentence", "transform"};

TEST(PostconditionTest, KeyboardEditsOneAdjacentKey) {
  const AdjacencyMap& keys = DefaultResources().keyboard;
  for (const char* w : kWords) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const std::string out = Text(Apply1("Keyboard", Cls(w), seed));
      ASSERT_EQ(out.size(), std::string(w).size());
      int diffs = 0;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == w[i]) continue;
        ++diffs;
        EXPECT_TRUE(keys.Adjacent(std::tolower(w[i]), std::tolower(out[i])))
            << w << " -> " << out;
      }
      EXPECT_EQ(diffs, 1);
    }
  }
}

TEST(PostconditionTest, OcrUsesConfusionTable) {
  const ConfusionTable& ocr = DefaultResources().ocr;
  for (const char* w : kWords) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const std::string in = w;
      const std::string out = Text(Apply1("Ocr", Cls(w), seed));
      ASSERT_EQ(out.size(), in.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == in[i]) continue;
        const auto* options = ocr.Find(std::string(1, in[i]));
        ASSERT_NE(options, nullptr);
        EXPECT_NE(std::find(options->begin(), options->end(), std::string(1, out[i])),
                  options->end());
      }
    }
  }
}

TEST(PostconditionTest, TyposStayWithinEditBudgetAndKeepFirstChar) {
  for (int budget : {1, 2}) {
    TransformOptions o;
    o.perturb.max_edits_per_word = budget;
    for (const char* w : kWords) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::string out = Text(Apply1("Typos", Cls(w), seed, o));
        EXPECT_LE(Levenshtein(w, out), static_cast<std::size_t>(budget));
        EXPECT_EQ(out[0], w[0]);
        EXPECT_NE(out, w);
      }
    }
  }
}

TEST(PostconditionTest, WordRatioBound) {
  const Sample s = Cls(
      "the quick brown fox jumps over the lazy dog while seven tired "
      "ravens watch from a distant fence near the river");
  std::size_t eligible = 0;
  for (const std::string& t : s.main_field().texts()) eligible += t.size() >= 3;
  for (double ratio : {0.1, 0.25, 0.5}) {
    TransformOptions o;
    o.perturb.word_ratio = ratio;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto out = Apply1("Typos", s, seed, o);
      const auto& edits = out.trace.edits.at("text");
      EXPECT_LE(edits.size(),
                static_cast<std::size_t>(std::ceil(ratio * eligible)));
      EXPECT_GE(edits.size(), 1u);
    }
  }
}

TEST(PostconditionTest, WordCaseMatchesAsciiMapping) {
  const Sample s = Cls("John's NLP class met at 9 in Room B.");
  EXPECT_EQ(Text(Apply1("WordCase:upper", s, 1)), "JOHN'S NLP CLASS MET AT 9 IN ROOM B.");
  EXPECT_EQ(Text(Apply1("WordCase:lower", s, 1)), "john's nlp class met at 9 in room b.");
  EXPECT_EQ(Text(Apply1("WordCase:title", s, 1)), "John's Nlp Class Met At 9 In Room B.");
  EXPECT_THROW(Apply1("WordCase:lower", Cls("all lower"), 1), NotApplicable);
}

TEST(PostconditionTest, SwapNumPreservesDigitCount) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto out = Apply1("SwapNum", Cls("Tom has 3 sisters and 1250 books"), seed,
                         {.perturb = {.word_ratio = 1.0}});
    const auto t = out.transformed.main_field().texts();
    EXPECT_EQ(t[2].size(), 1u);
    EXPECT_EQ(t[5].size(), 4u);
    EXPECT_NE(t[5][0], '0');
    EXPECT_TRUE(t[2] != "3" || t[5] != "1250");
  }
}

TEST(PostconditionTest, SwapNamedEntKeepsCategory) {
  const Gazetteer& gaz = DefaultResources().gazetteer;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Sample s = Seq({"Tom", "flew", "from", "Canada", "to", "Google"},
                         {"B-PER", "O", "O", "B-LOC", "O", "B-ORG"});
    const auto out = Apply1("SwapNamedEnt", s, seed, {.perturb = {.word_ratio = 1.0}});
    const Sample& t = out.transformed;
    for (const SpanLabel& span : BioToSpans("text", t.tags)) {
      std::string name;
      for (std::size_t i = span.start; i < span.end; ++i) {
        name += (i > span.start ? " " : "") + t.field("text").token(i);
      }
      EXPECT_EQ(gaz.CategoryOf(name), span.tag) << name;
    }
  }
}

TEST(PostconditionTest, MultiTokenEntityWidensSpan) {
  const Sample s = Seq({"She", "moved", "to", "Ireland", "."},
                       {"O", "O", "O", "B-LOC", "O"});
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 400 && !seen; ++seed) {
    const auto out = Apply1("SwapNamedEnt", s, seed);
    if (out.transformed.field("text").size() != 6) continue;
    seen = true;
    EXPECT_THAT(out.transformed.tags, ElementsAre("O", "O", "O", "B-LOC", "I-LOC", "O"));
  }
  EXPECT_TRUE(seen);
}

TEST(PostconditionTest, DeterministicForFixedSeed) {
  const Sample s = Cls("The quick brown fox jumps over the lazy dog.");
  for (const std::string& name : DefaultTransforms(Task::kClassification)) {
    auto t = MakeTransform(name);
    if (t->kind() != TransformKind::kPerSample) continue;
    try {
      EXPECT_EQ(t->Apply(s, 77), t->Apply(s, 77)) << name;
    } catch (const NotApplicable&) {
    }
  }
}

TEST(PostconditionTest, LabelPreservingTransformsKeepLabels) {
  const Sample s = Seq({"John", "lives", "in", "New", "York", "and", "loves", "it", "."},
                       {"B-PER", "O", "O", "B-LOC", "I-LOC", "O", "O", "O", "O"});
  for (const std::string& name : DefaultTransforms(Task::kSequenceLabeling)) {
    auto t = MakeTransform(name);
    if (t->kind() != TransformKind::kPerSample || !t->label_key().empty()) continue;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      try {
        const Sample out = t->Apply(s, seed).at(0).transformed;
        std::vector<std::string> types_in, types_out;
        for (const auto& sp : BioToSpans("text", s.tags)) types_in.push_back(sp.tag);
        for (const auto& sp : BioToSpans("text", out.tags)) types_out.push_back(sp.tag);
        EXPECT_EQ(types_in, types_out) << name;
      } catch (const NotApplicable&) {
      }
    }
  }
}

// --- Individual transforms -----------------------------------------------------

TEST(TransformTest, PrejudiceMapsRepeatsConsistently) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = Apply1("Prejudice:man", Cls("Marry met Ann and Marry left"), seed)
                       .transformed.main_field().texts();
    EXPECT_EQ(t[0], t[4]);
    EXPECT_NE(t[0], t[2]);
    EXPECT_EQ(DefaultResources().gazetteer.FindMain(t[0])->gender, "man");
  }
  EXPECT_THROW(Apply1("Prejudice:man", Cls("I love NLP"), 1), NotApplicable);
  EXPECT_THROW(MakeTransform("Prejudice:region:Atlantis"), ConfigError);
  EXPECT_NO_THROW(MakeTransform("Prejudice:region:Asia"));
}

TEST(TransformTest, TwitterTypeTagsInsertedTokensO) {
  const auto out = Apply1("TwitterType", Seq({"I", "love", "NLP"}, {"O", "O", "B-ORG"}), 39);
  EXPECT_EQ(out.transformed.tags.size(), out.transformed.field("text").size());
  EXPECT_EQ(std::count(out.transformed.tags.begin(), out.transformed.tags.end(), "B-ORG"), 1);
}

TEST(TransformTest, RmvPuncWithoutPunctuationIsNotApplicable) {
  EXPECT_THROW(Apply1("RmvPunc", Cls("I love NLP"), 1), NotApplicable);
}

TEST(TransformTest, AddPuncExtendsTags) {
  const Sample s = Seq({"John", "lives", "in", "Ireland", "now"},
                       {"B-PER", "O", "O", "B-LOC", "O"});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Sample out = Apply1("AddPunc", s, seed).transformed;
    ASSERT_EQ(out.tags.size(), out.field("text").size());
    for (std::size_t i = 0; i < out.tags.size(); ++i) {
      if (IsPunctuation(out.field("text").token(i))) EXPECT_EQ(out.tags[i], "O");
    }
  }
}

TEST(TransformTest, TenseRetagsPos) {
  const Sample s = Seq({"He", "is", "studying", "NLP"}, {"PRP", "VBZ", "VBG", "NNP"});
  const auto out = Apply1("Tense", s, 4);
  EXPECT_EQ(out.transformed.field("text").raw(), "He has studied NLP");
  EXPECT_THAT(out.transformed.tags, ElementsAre("PRP", "VBZ", "VBN", "NNP"));
  EXPECT_TRUE(out.trace.label_edit.relabeled);
  EXPECT_THROW(Apply1("Tense", Cls("Blue skies over green hills"), 1), NotApplicable);
}

TEST(TransformTest, InsertAdvTagsAdverb) {
  const Sample s = Seq({"He", "loves", "NLP"}, {"PRP", "VBZ", "NNP"});
  const Sample out = Apply1("InsertAdv", s, 11).transformed;
  EXPECT_EQ(out.field("text").raw(), "He really loves NLP");
  EXPECT_THAT(out.tags, ElementsAre("PRP", "RB", "VBZ", "NNP"));
}

TEST(TransformTest, NegationOnlyForSequenceLabeling) {
  EXPECT_THROW(Apply1("AddNeg", Cls("John lives in Ireland"), 0), NotApplicable);
  EXPECT_THROW(Apply1("SwapAnt", Cls("The room is dark"), 0), NotApplicable);
  EXPECT_THROW(Apply1("RmvNeg", Seq({"John", "lives", "here"}, {"B-PER", "O", "O"}), 0),
               NotApplicable);
  EXPECT_EQ(Text(Apply1("RmvNeg", Seq({"It", "isn't", "here"}, {"O", "O", "O"}), 0)),
            "It is here");
}

TEST(TransformTest, AppendIrrPositions) {
  const Sample s = Cls("I love NLP.");
  const auto append = Text(Apply1("AppendIrr", s, 3));
  EXPECT_EQ(append.rfind("I love NLP. ", 0), 0u);
  TransformOptions o;
  o.extra = {{"position", "prepend"}};
  const auto prepend = Text(Apply1("AppendIrr", s, 3, o));
  EXPECT_TRUE(prepend.ends_with(" I love NLP."));
  o.extra = {{"position", "middle"}};
  EXPECT_THROW(Apply1("AppendIrr", s, 3, o), ConfigError);
}

TEST(TransformTest, EntTyposLeavesOtherTokens) {
  const Sample s = Seq({"I", "visited", "Shanghai", "in", "May"},
                       {"O", "O", "B-LOC", "O", "O"});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = Apply1("EntTypos", s, seed).transformed.field("text").texts();
    EXPECT_EQ(t[0], "I");
    EXPECT_EQ(t[1], "visited");
    EXPECT_EQ(t[3], "in");
    EXPECT_NE(t[2], "Shanghai");
  }
  EXPECT_THROW(Apply1("EntTypos", Seq({"Go", "to", "UN"}, {"O", "O", "B-ORG"}), 1),
               NotApplicable);
}

TEST(TransformTest, OovReplacementIsOutsideMainGazetteer) {
  const Gazetteer& gaz = DefaultResources().gazetteer;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto out = Apply1("OOV", Seq({"I", "met", "John"}, {"O", "O", "B-PER"}), seed);
    const std::string name = out.transformed.field("text").token(2);
    EXPECT_FALSE(gaz.InMain(name)) << name;
    EXPECT_NE(name, "John");
    EXPECT_EQ(out.transformed.tags[2], "B-PER");
  }
}

TEST(TransformTest, CrossCategoryKeepsGoldTag) {
  const auto out = Apply1("CrossCategory", Seq({"I", "love", "NLP"}, {"O", "O", "B-ORG"}), 33);
  EXPECT_THAT(out.transformed.tags, ElementsAre("O", "O", "B-ORG"));
  EXPECT_EQ(DefaultResources().gazetteer.CategoryOf("Shanghai"), "LOC");
  EXPECT_TRUE(out.trace.label_edit.relabeled);
  EXPECT_EQ(out.trace.label_edit.description, "surface-category mismatch");
}

TEST(TransformTest, CrossCategoryRejectsSingleCategoryGazetteer) {
  Resources r = DefaultResources();
  r.gazetteer = Gazetteer::Parse(R"({"main": [
      {"name": "Tom", "category": "PER", "gender": "man"},
      {"name": "Ann", "category": "PER", "gender": "woman"}],
      "held_out": []})");
  TransformOptions o;
  o.resources = &r;
  EXPECT_THROW(MakeTransform("CrossCategory", o), ConfigError);
}

TEST(TransformTest, ConcatSentJoinsWindow) {
  const Sample a = Seq({"I", "love", "NLP", "so", "much"}, {"O", "O", "B-ORG", "O", "O"});
  Sample b = Seq({"John", "lives", "here", "."}, {"B-PER", "O", "O", "O"});
  b.id = "fy";
  auto t = MakeTransform("ConcatSent");
  EXPECT_EQ(t->kind(), TransformKind::kWindow);
  const std::vector<Sample> window = {a, b};
  const TransformOutput out = t->ApplyWindow(window, 0);
  EXPECT_EQ(out.transformed.field("text").size(), 9u);
  EXPECT_EQ(out.transformed.tags.size(), 9u);
  EXPECT_EQ(out.transformed.tags[5], "B-PER");
  EXPECT_EQ(out.transformed.id, "fx+fy::ConcatSent");
  TransformOptions o;
  o.extra = {{"k", 5}};
  EXPECT_THROW(MakeTransform("ConcatSent", o), ConfigError);
  o.extra = {{"k", 4}};
  EXPECT_EQ(MakeTransform("ConcatSent", o)->window(), 4u);
}

TEST(TransformTest, DoubleDenialNeedsSentimentWord) {
  EXPECT_THROW(Apply1("DoubleDenial", Cls("I read NLP papers"), 0), NotApplicable);
  EXPECT_EQ(Text(Apply1("DoubleDenial", Cls("The soup is good"), 0)), "The soup is not bad");
}

TEST(TransformTest, AddSumInsertsAfterMentionSentence) {
  const Sample s = Cls("I watched Titanic again. It was long.");
  const std::string out = Text(Apply1("AddSum:movie", s, 0));
  EXPECT_EQ(out,
            "I watched Titanic again. Titanic is a 1997 romance set aboard the "
            "doomed ocean liner. It was long.");
  EXPECT_THROW(Apply1("AddSum:movie", Cls("No films here."), 0), NotApplicable);
  EXPECT_THROW(Apply1("AddSum:movie", Seq({"Titanic"}, {"O"}), 0), TaskError);
}

TEST(TransformTest, SwapSpecialEntReplacesWholeTitle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string out =
        Text(Apply1("SwapSpecialEnt:movie", Cls("The Godfather was great"), seed));
    EXPECT_TRUE(out.ends_with(" was great"));
    EXPECT_EQ(out.find("Godfather"), std::string::npos);
  }
}

TEST(TransformTest, RevTgtFlipsOnlyTarget) {
  const auto out = Apply1("RevTgt", Burgers(), 0);
  EXPECT_EQ(out.transformed.aspects[0].polarity, "negative");
  EXPECT_EQ(out.transformed.aspects[1].polarity, "positive");
  EXPECT_TRUE(out.trace.label_edit.relabeled);

  Sample neutral = Burgers();
  neutral.aspects[0].polarity = "neutral";
  EXPECT_THROW(Apply1("RevTgt", neutral, 0), NotApplicable);
  Sample negated = Burgers();
  negated.fields["text"] = TextField::FromRaw("Not tasty burgers, and crispy fries");
  negated.aspects = {{"burgers", 2, 3, "negative"}, {"fries", 6, 7, "positive"}};
  EXPECT_THROW(Apply1("RevTgt", negated, 0), NotApplicable);
}

TEST(TransformTest, RevNonKeepsTarget) {
  const auto out = Apply1("RevNon", Burgers(), 0);
  EXPECT_EQ(out.transformed.aspects[0].polarity, "positive");
  Sample single = Burgers();
  single.aspects.pop_back();
  EXPECT_THROW(Apply1("RevNon", single, 0), NotApplicable);
}

TEST(TransformTest, AddDiffAppendsAbsentAspect) {
  Sample s;
  s.id = "fx";
  s.task = Task::kAspectSentiment;
  s.fields["text"] = TextField::FromRaw("Tasty burgers.");
  s.aspects = {{"burgers", 1, 2, "positive"}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = Apply1("AddDiff", s, seed);
    const std::string text = Text(out);
    EXPECT_EQ(text.rfind("Tasty burgers, but ", 0), 0u) << text;
    EXPECT_TRUE(text.ends_with("."));
    EXPECT_EQ(out.transformed.aspects, s.aspects);
  }
  Resources r = DefaultResources();
  r.aspect_snippets.clear();
  TransformOptions o;
  o.resources = &r;
  EXPECT_THROW(Apply1("AddDiff", s, 0, o), ConfigError);
}

TEST(TransformTest, NliContradictions) {
  const auto ant = Apply1("SwapAnt-NLI", Pair("The room is dark", "The room is dark"), 0);
  EXPECT_EQ(ant.transformed.field("hypothesis").raw(), "The room is light");
  EXPECT_EQ(ant.transformed.label, "contradiction");
  const auto num = Apply1("NumWord", Pair("Tom has 3 sisters", "Tom has 3 sisters"), 0);
  EXPECT_EQ(num.transformed.field("premise").raw(), "Tom has 3 sisters");
  EXPECT_EQ(num.transformed.label, "contradiction");
  EXPECT_THROW(Apply1("NumWord", Pair("Tom has sisters", "Tom has sisters"), 0), NotApplicable);
  EXPECT_THROW(Apply1("SwapAnt-NLI", Pair("The room is dark", "The room is dark", "neutral"), 0),
               NotApplicable);
}

TEST(TransformTest, AddSentLeavesHypothesis) {
  const auto out = Apply1("AddSent", Pair("Tom has 3 sisters.", "Tom has 3 sisters."), 0);
  EXPECT_EQ(out.transformed.field("hypothesis").raw(), "Tom has 3 sisters.");
  EXPECT_EQ(out.transformed.label, "entailment");
  EXPECT_GT(out.transformed.field("premise").size(), 5u);
}

TEST(TransformTest, PluginRewriteNeedsAdapter) {
  EXPECT_THROW(Apply1("BackTrans", Cls("I love NLP"), 0), AdapterUnavailable);
  TransformOptions o;
  o.rewriter = [](Task, const std::vector<std::string>& texts) { return texts; };
  EXPECT_THROW(Apply1("BackTrans", Cls("I love NLP"), 0, o), NotApplicable);
  o.rewriter = [](Task, const std::vector<std::string>&) {
    return std::vector<std::string>{"I adore NLP a lot"};
  };
  const auto out = Apply1("MLMSuggestion", Cls("I love NLP"), 0, o);
  EXPECT_EQ(Text(out), "I adore NLP a lot");
  EXPECT_EQ(out.transformed.label, "positive");
}

TEST(TransformTest, MaxOutputsGivesDistinctVariants) {
  TransformOptions o;
  o.max_outputs = 4;
  const auto outs = MakeTransform("Typos", o)->Apply(Cls("Ireland"), 5);
  ASSERT_GE(outs.size(), 2u);
  EXPECT_EQ(outs[0].transformed.id, "fx::Typos");
  EXPECT_EQ(outs[1].transformed.id, "fx::Typos#1");
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (std::size_t j = i + 1; j < outs.size(); ++j) {
      EXPECT_NE(Text(outs[i]), Text(outs[j]));
    }
  }
}

TEST(TransformTest, RegistryErrors) {
  EXPECT_THROW(MakeTransform("NoSuchTransform"), ConfigError);
  EXPECT_TRUE(IsKnownTransform("WordCase:upper"));
  EXPECT_FALSE(IsKnownTransform("WordCase:sideways"));
  TransformOptions bad;
  bad.perturb.word_ratio = 0;
  EXPECT_THROW(MakeTransform("Typos", bad), ConfigError);
  const auto defaults = DefaultTransforms(Task::kPairClassification);
  EXPECT_EQ(std::count(defaults.begin(), defaults.end(), "Tense"), 0);
  EXPECT_EQ(std::count(defaults.begin(), defaults.end(), "BackTrans"), 0);
  EXPECT_EQ(std::count(defaults.begin(), defaults.end(), "Overlap"), 1);
}

TEST(TransformTest, OutputJsonRoundTrip) {
  const auto out = Apply1("RevTgt", Burgers(), 0);
  const auto j = nlohmann::json::parse(OutputToJson(out).dump());
  const TransformOutput back = OutputFromJson(j, Task::kAspectSentiment, 0);
  EXPECT_EQ(back.transformed, out.transformed);
  EXPECT_EQ(back.trace, out.trace);
  EXPECT_EQ(back.original_id, "fx");
  EXPECT_EQ(back.transform, "RevTgt");
}

}  // namespace
}  // namespace flint
