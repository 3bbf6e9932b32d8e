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

#include "flint/resources.h"

#include <cmath>
#include <set>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "flint/error.h"

namespace flint {
namespace {

using ::testing::Contains;
using ::testing::HasSubstr;

// Geometric model of a staggered keyboard: each row is shifted half a key
// right of the one above. Two keys touch when they share a row and are one
// key apart, or sit on neighbouring rows within half a key horizontally.
std::set<char> GeometricNeighbours(char key) {
  static const char* kRows[] = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
  double kx = 0;
  int ky = -1;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; kRows[r][c]; ++c) {
      if (kRows[r][c] == key) {
        kx = c + 0.5 * r;
        ky = r;
      }
    }
  }
  std::set<char> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; kRows[r][c]; ++c) {
      const double dx = std::abs(c + 0.5 * r - kx);
      const int dy = std::abs(r - ky);
      if ((dy == 0 && dx == 1.0) || (dy == 1 && dx <= 0.5)) {
        out.insert(kRows[r][c]);
      }
    }
  }
  return out;
}

TEST(AdjacencyMap, ParsesEntryAndSymmetrizes) {
  const AdjacencyMap m = AdjacencyMap::Parse("a\tqwsz\n");
  EXPECT_EQ(*m.Find('a'), (std::set<char>{'q', 'w', 's', 'z'}));
  EXPECT_TRUE(m.Adjacent('z', 'a'));
  EXPECT_EQ(m.Find('x'), nullptr);
}

TEST(AdjacencyMap, BundledTableMatchesKeyboardGeometry) {
  const AdjacencyMap& m = DefaultResources().keyboard;
  for (char c = 'a'; c <= 'z'; ++c) {
    ASSERT_NE(m.Find(c), nullptr) << c;
    EXPECT_EQ(*m.Find(c), GeometricNeighbours(c)) << c;
  }
  for (const auto& [a, ns] : m.entries()) {
    for (char b : ns) EXPECT_TRUE(m.Adjacent(b, a)) << a << b;
  }
}

TEST(WordRelation, RejectsSelfRelation) {
  EXPECT_THROW(WordRelation::Parse("dark\tdark\n", "antonym"), InvariantError);
  EXPECT_THROW(WordRelation::Parse("Dark\tdark\n", "antonym"), InvariantError);
  EXPECT_NO_THROW(WordRelation::Parse("dark\tlight\n", "antonym"));
}

TEST(Tsv, FormatErrorsCarryLineNumbers) {
  try {
    ParseTsv("# comment\na\tb\nno tab here\n");
    FAIL();
  } catch (const LexiconFormatError& e) {
    EXPECT_THAT(e.what(), HasSubstr("line 3"));
  }
  EXPECT_THROW(ConfusionTable::Parse("i\ti\n"), InvariantError);
  EXPECT_THROW(ContractionTable::Parse("will\twon't\n"), LexiconFormatError);
}

TEST(ContractionTable, RejectsNonBijectiveTables) {
  EXPECT_THROW(ContractionTable::Parse("he is\the's\nhe has\the's\n"),
               InvariantError);
  EXPECT_THROW(ContractionTable::Parse("will not\twon't\nWill Not\twont\n"),
               InvariantError);
}

TEST(ContractionTable, ContractThenExpandIsIdentity) {
  const ContractionTable& t = DefaultResources().contractions;
  ASSERT_FALSE(t.pairs().empty());
  for (const auto& [phrase, contraction] : t.pairs()) {
    ASSERT_NE(t.Contract(phrase), nullptr);
    ASSERT_NE(t.Expand(*t.Contract(phrase)), nullptr);
    EXPECT_EQ(*t.Expand(*t.Contract(phrase)), phrase);
    EXPECT_EQ(*t.Contract(*t.Expand(contraction)), contraction);
  }
}

TEST(SentimentLexicon, ReversalMustFlipPolarity) {
  EXPECT_THROW(SentimentLexicon::Parse("good\tpos nice\nnice\tpos good\n"),
               InvariantError);
  EXPECT_THROW(SentimentLexicon::Parse("good\tpos bad\n"), InvariantError);
  const SentimentLexicon lex =
      SentimentLexicon::Parse("good\tpos bad\nbad\tneg good\n");
  EXPECT_EQ(lex.Find("Good")->polarity, Polarity::kPositive);
}

TEST(Gazetteer, NamesBelongToOneCategory) {
  EXPECT_THROW(Gazetteer::Parse(R"({"main":[{"name":"Jordan","category":"LOC"},
      {"name":"Jordan","category":"PER","gender":"man"}]})"),
               InvariantError);
  EXPECT_THROW(Gazetteer::Parse(R"({"main":[{"name":"X","category":"CITY"}]})"),
               LexiconFormatError);
}

TEST(Gazetteer, BundledPartitionsAreDisjoint) {
  const Gazetteer& g = DefaultResources().gazetteer;
  for (const GazetteerEntry& e : g.held_out()) {
    EXPECT_FALSE(g.InMain(e.name)) << e.name;
  }
  // Held-out share is a fifth of the total, per category.
  for (const std::string& cat : g.categories()) {
    const double main = g.InCategory(cat).size();
    const double held = g.InCategory(cat, true).size();
    EXPECT_NEAR(held / (main + held), 0.2, 0.03) << cat;
  }
  const GazetteerEntry* e = nullptr;
  EXPECT_EQ(g.LongestMatch({"in", "New", "Zealand", "."}, 1, &e), 2u);
  EXPECT_EQ(e->category, "LOC");
}

TEST(Resources, BundledTablesHoldReferencePairs) {
  const Resources& r = DefaultResources();
  EXPECT_THAT(*r.error_forms.Find("definitely"), Contains("difinately"));
  EXPECT_THAT(*r.acronyms.Find("NLP"),
              ::testing::ElementsAre("Natural", "Language", "Processing"));
  EXPECT_THAT(*r.synonyms.Find("loves"), Contains("likes"));
  EXPECT_THAT(*r.synonyms.Find("good"), Contains("fine"));
  EXPECT_EQ(r.sentiment.Find("tasty")->reversal, "terrible");
  EXPECT_EQ(r.sentiment.Find("terrible")->reversal, "tasty");
  EXPECT_EQ(r.sentiment.Find("crispy")->reversal, "soggy");
  EXPECT_EQ(r.sentiment.Find("soggy")->reversal, "crispy");
  EXPECT_EQ(*r.contractions.Contract("will not"), "won't");
  EXPECT_THAT(*r.antonyms.Find("dark"), Contains("light"));
  EXPECT_THAT(*r.ocr.Find("i"), Contains("1"));
  EXPECT_EQ(*r.gazetteer.CategoryOf("Shanghai"), "LOC");
  EXPECT_EQ(r.gazetteer.FindMain("Marry")->gender, "woman");
  EXPECT_THAT(r.prefixes.excluded,
              ::testing::UnorderedElementsAre("en", "de", "be", "a", "out"));
  EXPECT_TRUE(r.prefixes.words.count("transfixed"));
  const VerbForms* love = r.verbs.FindLemma("love");
  ASSERT_NE(love, nullptr);
  EXPECT_EQ(love->past, "loved");
  EXPECT_FALSE(r.adverbs.empty());
  EXPECT_FALSE(r.irrelevant_sentences.empty());
  EXPECT_FALSE(r.summaries.at("movie").empty());
}

TEST(Resources, MissingDirectoryIsAConfigError) {
  EXPECT_THROW(Resources::Load("/nonexistent/flint"), ConfigError);
}

}  // namespace
}  // namespace flint
