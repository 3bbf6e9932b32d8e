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

#include "flint/edit_trace.h"

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "flint/error.h"
#include "flint/random.h"

namespace flint {
namespace {

using ::testing::ElementsAre;

Sample NerSample(std::vector<std::string> tokens,
                 std::vector<std::string> tags) {
  Sample s;
  s.id = "ner";
  s.task = Task::kSequenceLabeling;
  s.fields["text"] = TextField::FromTokens(tokens);
  s.tags = std::move(tags);
  return s;
}

TEST(ApplyEdits, Replace) {
  const TextField f = TextField::FromTokens({"He", "loves", "NLP"});
  const std::vector<Edit> edits = {Edit::Replace(1, 2, {"likes"})};
  EXPECT_THAT(ApplyEdits(f, edits).texts(), ElementsAre("He", "likes", "NLP"));
}

TEST(ApplyEdits, Delete) {
  const TextField f = TextField::FromTokens({"I", "love", "NLP"});
  const std::vector<Edit> edits = {Edit::Delete(0, 1)};
  EXPECT_THAT(ApplyEdits(f, edits).texts(), ElementsAre("love", "NLP"));
}

TEST(ApplyEdits, Insert) {
  const TextField f = TextField::FromTokens({"He", "loves", "NLP"});
  const std::vector<Edit> edits = {Edit::Insert(1, {"really"})};
  const TextField out = ApplyEdits(f, edits);
  EXPECT_THAT(out.texts(), ElementsAre("He", "really", "loves", "NLP"));
  EXPECT_EQ(out.raw(), "He really loves NLP");
}

TEST(ApplyEdits, RerendersPunctuationSpacing) {
  const TextField f = TextField::FromRaw("I love NLP");
  const std::vector<Edit> edits = {Edit::Insert(3, {"."}),
                                   Edit::Insert(0, {"("})};
  EXPECT_EQ(ApplyEdits(f, edits).raw(), "(I love NLP.");
}

TEST(ApplyEdits, OverlapAndBounds) {
  const TextField f = TextField::FromTokens({"a", "b", "c", "d"});
  std::vector<Edit> overlap = {Edit::Replace(0, 2, {"x"}),
                               Edit::Delete(1, 3)};
  EXPECT_THROW(ApplyEdits(f, overlap), OverlapError);
  std::vector<Edit> insert_inside = {Edit::Replace(0, 3, {"x"}),
                                     Edit::Insert(1, {"y"})};
  EXPECT_THROW(ApplyEdits(f, insert_inside), OverlapError);
  std::vector<Edit> twice = {Edit::Insert(1, {"y"}), Edit::Insert(1, {"z"})};
  EXPECT_THROW(ApplyEdits(f, twice), OverlapError);
  std::vector<Edit> oob = {Edit::Delete(3, 5)};
  EXPECT_THROW(ApplyEdits(f, oob), BoundsError);
  std::vector<Edit> insert_oob = {Edit::Insert(5, {"y"})};
  EXPECT_THROW(ApplyEdits(f, insert_oob), BoundsError);
  // Insert at the start of a replaced range is not an overlap.
  std::vector<Edit> adjacent = {Edit::Replace(1, 2, {"B"}),
                                Edit::Insert(1, {"y"})};
  EXPECT_THAT(ApplyEdits(f, adjacent).texts(),
              ElementsAre("a", "y", "B", "c", "d"));
}

TEST(ApplyEdits, FrozenIndicesFollowSurvivors) {
  TextField f = TextField::FromTokens({"a", "b", "c"});
  f.set_frozen({0, 2});
  const std::vector<Edit> edits = {Edit::Insert(1, {"x", "y"}),
                                   Edit::Delete(0, 1)};
  const TextField out = ApplyEdits(f, edits);
  EXPECT_THAT(out.texts(), ElementsAre("x", "y", "b", "c"));
  EXPECT_THAT(out.frozen(), ElementsAre(3));
}

TEST(RemapLabels, InsertionAfterSpanKeepsSpan) {
  const Sample s = NerSample({"John", "lives", "here"}, {"B-PER", "O", "O"});
  EditTrace t;
  t.Add("text", Edit::Insert(1, {"really"}));
  const Sample out = RemapLabels(s, t);
  EXPECT_THAT(out.tags, ElementsAre("B-PER", "O", "O", "O"));
  EXPECT_THAT(BioToSpans("text", out.tags),
              ElementsAre(SpanLabel{"text", 0, 1, "PER"}));
}

TEST(RemapLabels, ReplacementWidensSpan) {
  // ORG span (2,4) replaced by three tokens: index map 0->0, 1->1, 4->5.
  const Sample s = NerSample({"I", "like", "Acme", "Corp", "a", "lot"},
                             {"O", "O", "B-ORG", "I-ORG", "O", "O"});
  EditTrace t;
  t.Add("text", Edit::Replace(2, 4, {"Acme", "Widget", "Corp"}));
  const Sample out = RemapLabels(s, t);
  EXPECT_THAT(BioToSpans("text", out.tags),
              ElementsAre(SpanLabel{"text", 2, 5, "ORG"}));
  EXPECT_THAT(out.tags,
              ElementsAre("O", "O", "B-ORG", "I-ORG", "I-ORG", "O", "O"));
}

TEST(RemapLabels, DeletionInsideEntityIsASplit) {
  const Sample s = NerSample({"New", "York", "City"},
                             {"B-LOC", "I-LOC", "I-LOC"});
  EditTrace t;
  t.Add("text", Edit::Delete(1, 2));
  EXPECT_THROW(RemapLabels(s, t), LabelSplitError);
  // A relabeling trace is not held to the split rule.
  t.Relabel("test");
  EXPECT_NO_THROW(RemapLabels(s, t));
}

TEST(RemapLabels, CrossingReplacementIsASplit) {
  const Sample s = NerSample({"in", "New", "York"}, {"O", "B-LOC", "I-LOC"});
  EditTrace t;
  t.Add("text", Edit::Replace(0, 2, {"x"}));
  EXPECT_THROW(RemapLabels(s, t), LabelSplitError);
}

TEST(RemapLabels, PositionalTagsMergeToFirst) {
  Sample s = NerSample({"I", "will", "not", "go"}, {"PRP", "MD", "RB", "VB"});
  EditTrace t;
  t.Add("text", Edit::Replace(1, 3, {"won't"}));
  EXPECT_THAT(RemapLabels(s, t).tags, ElementsAre("PRP", "MD", "VB"));

  EditTrace ins;
  ins.Add("text", Edit::Insert(3, {"really"}, {"RB"}));
  EXPECT_THAT(RemapLabels(s, ins).tags,
              ElementsAre("PRP", "MD", "RB", "RB", "VB"));
}

TEST(RemapLabels, AspectSpansMove) {
  Sample s = MakeTextSample("a", Task::kAspectSentiment,
                            "Tasty burgers and fries");
  s.aspects = {{"burgers", 1, 2, "positive"}, {"fries", 3, 4, "positive"}};
  EditTrace t;
  t.Add("text", Edit::Replace(0, 1, {"Very", "tasty"}));
  const Sample out = RemapLabels(s, t);
  ASSERT_EQ(out.aspects.size(), 2u);
  EXPECT_EQ(out.aspects[0].start, 2u);
  EXPECT_EQ(out.aspects[1].start, 4u);
  EXPECT_EQ(out.aspects[1].term, "fries");
}

// Random traces against random tag sequences: surviving tokens map
// monotonically and keep their tags.
TEST(RemapLabels, IndexMapIsMonotone) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.Uniform(8);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(i));
    std::vector<Edit> edits;
    std::size_t pos = 0;
    while (pos <= n) {
      const std::size_t kind = rng.Uniform(4);
      if (kind == 0 && pos < n) {
        const std::size_t end = pos + 1 + rng.Uniform(std::min<std::size_t>(2, n - pos));
        edits.push_back(Edit::Replace(pos, std::min(end, n), {"r"}));
        pos = std::min(end, n) + 1;
      } else if (kind == 1) {
        edits.push_back(Edit::Insert(pos, {"i"}));
        pos += 1;
      } else if (kind == 2 && pos < n) {
        edits.push_back(Edit::Delete(pos, pos + 1));
        pos += 2;
      } else {
        pos += 1;
      }
    }
    const Alignment a = Align(tokens, edits);
    const auto map = a.IndexMap();
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < n; ++i) {
      if (!map[i]) continue;
      if (last) EXPECT_LT(*last, *map[i]);
      last = map[i];
      EXPECT_EQ(a.texts[*map[i]], tokens[i]);
    }
  }
}

TEST(Compose, MatchesSequentialApplication) {
  Sample s = NerSample({"a", "b", "c", "d", "e"}, {"O", "O", "O", "O", "O"});
  EditTrace first;
  first.Add("text", Edit::Replace(1, 3, {"X", "Y"}));
  first.Add("text", Edit::Insert(4, {"i"}));
  EditTrace second;
  // Mid: a X Y d i e. Replace Y..d, delete e.
  second.Add("text", Edit::Replace(2, 4, {"Z"}));
  second.Add("text", Edit::Delete(5, 6));
  const Sample mid = RemapLabels(s, first);
  const Sample fin = RemapLabels(mid, second);
  const EditTrace composed = Compose(s, first, second);
  const Sample direct = RemapLabels(s, composed);
  EXPECT_EQ(direct.field("text").texts(), fin.field("text").texts());
  EXPECT_THAT(fin.field("text").texts(), ElementsAre("a", "X", "Z", "i"));
}

TEST(Compose, RandomTracesAgree) {
  Rng rng(5);
  auto random_trace = [&](std::size_t n) {
    EditTrace t;
    std::size_t pos = 0;
    while (pos <= n) {
      const std::size_t kind = rng.Uniform(5);
      if (kind == 0 && pos < n) {
        const std::size_t end = std::min(n, pos + 1 + rng.Uniform(2));
        std::vector<std::string> toks(1 + rng.Uniform(2), "r");
        t.Add("text", Edit::Replace(pos, end, toks));
        pos = end + 1;
      } else if (kind == 1) {
        t.Add("text", Edit::Insert(pos, {"i"}));
        pos += 1;
      } else if (kind == 2 && pos < n) {
        t.Add("text", Edit::Delete(pos, pos + 1));
        pos += 2;
      } else {
        pos += 1;
      }
    }
    return t;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.Uniform(7);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(i));
    Sample s = NerSample(tokens, std::vector<std::string>(n, "O"));
    const EditTrace t1 = random_trace(n);
    const Sample mid = RemapLabels(s, t1);
    if (mid.field("text").empty()) continue;
    const EditTrace t2 = random_trace(mid.field("text").size());
    const Sample fin = RemapLabels(mid, t2);
    const EditTrace composed = Compose(s, t1, t2);
    ASSERT_EQ(RemapLabels(s, composed).field("text").texts(),
              fin.field("text").texts())
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace flint
