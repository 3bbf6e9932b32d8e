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

#include "flint/validate.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "flint/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace flint {
namespace {

// Plain recursive Levenshtein with a memo table keyed by suffix positions.
std::size_t RecursiveDistance(const std::string& a, const std::string& b,
                              std::size_t i, std::size_t j,
                              std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  auto it = memo.find({i, j});
  if (it != memo.end()) return it->second;
  std::size_t best = RecursiveDistance(a, b, i + 1, j + 1, memo) + (a[i] != b[j]);
  best = std::min(best, RecursiveDistance(a, b, i + 1, j, memo) + 1);
  best = std::min(best, RecursiveDistance(a, b, i, j + 1, memo) + 1);
  memo[{i, j}] = best;
  return best;
}

std::vector<std::string> AllStrings(std::size_t max_len) {
  std::vector<std::string> out = {""};
  std::vector<std::string> layer = {""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& s : layer) {
      for (char c : {'a', 'b', 'c'}) next.push_back(s + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// BLEU written out from the formula with linear scans instead of maps.
double OracleBleu(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  if (c.empty()) return 0;
  double bp = c.size() > r.size() ? 1.0 : std::exp(1.0 - double(r.size()) / double(c.size()));
  double sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::vector<std::string>> cg, rg;
    for (std::size_t i = 0; i + n <= c.size(); ++i) cg.emplace_back(c.begin() + i, c.begin() + i + n);
    for (std::size_t i = 0; i + n <= r.size(); ++i) rg.emplace_back(r.begin() + i, r.begin() + i + n);
    std::vector<bool> used(rg.size(), false);
    double m = 0;
    for (const auto& g : cg) {
      for (std::size_t k = 0; k < rg.size(); ++k) {
        if (!used[k] && rg[k] == g) {
          used[k] = true;
          m += 1;
          break;
        }
      }
    }
    const double total = static_cast<double>(cg.size());
    if (n == 1 && m == 0) return 0;
    sum += std::log(n == 1 ? m / total : (m + 1) / (total + 1));
  }
  return bp * std::exp(sum / 4);
}

std::vector<std::string> RandomTokens(std::mt19937& gen, std::size_t len) {
  static const std::vector<std::string> kVocab = {"the", "cat", "sat", "on", "mat", "a", "dog", "ran"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(kVocab[gen() % kVocab.size()]);
  return out;
}

TEST(EditDistanceTest, MatchesRecursiveOracleOnAllShortStrings) {
  const std::vector<std::string> all = AllStrings(5);
  ASSERT_EQ(all.size(), 364u);
  for (const std::string& a : all) {
    for (const std::string& b : all) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
      ASSERT_EQ(EditDistance(a, b), RecursiveDistance(a, b, 0, 0, memo))
          << a << " / " << b;
    }
  }
}

TEST(EditDistanceTest, KnownValuesAndCodePoints) {
  EXPECT_EQ(EditDistance("kitten", "sitting"), 3u);
  EXPECT_EQ(EditDistance("", "abc"), 3u);
  EXPECT_EQ(EditDistance("h\xC3\xA9llo", "hello"), 1u);  // é is one code point
}

TEST(ReplacementRatioTest, CountsReplacedTokens) {
  EXPECT_NEAR(ReplacementRatio({"a", "b", "c"}, {"a", "x", "c"}), 1.0 / 3, 1e-12);
  EXPECT_EQ(ReplacementRatio({}, {}), 0.0);
  EXPECT_EQ(ReplacementRatio({"a"}, {"a"}), 0.0);
  EXPECT_EQ(LcsLength({"a", "b", "c", "d"}, {"b", "d", "a"}), 2u);
}

TEST(BleuTest, IdentityIsOne) {
  std::mt19937 gen(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = RandomTokens(gen, 1 + gen() % 20);
    EXPECT_NEAR(Bleu(x, x), 1.0, 1e-9);
  }
}

TEST(BleuTest, ShorterCandidateIsPenalised) {
  std::mt19937 gen(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t r = 2 + gen() % 15;
    const std::size_t c = 1 + gen() % (r - 1);
    EXPECT_LT(BrevityPenalty(c, r), 1.0);
    const auto ref = RandomTokens(gen, r);
    const std::vector<std::string> cand(ref.begin(), ref.begin() + static_cast<long>(c));
    EXPECT_LT(Bleu(cand, ref), 1.0);
  }
  EXPECT_EQ(BrevityPenalty(0, 3), 0.0);
  EXPECT_EQ(BrevityPenalty(4, 3), 1.0);
}

TEST(BleuTest, MatchesIndependentImplementation) {
  std::mt19937 gen(13);
  for (int i = 0; i < 500; ++i) {
    const auto c = RandomTokens(gen, gen() % 12);
    const auto r = RandomTokens(gen, 1 + gen() % 12);
    EXPECT_NEAR(Bleu(c, r), OracleBleu(c, r), 1e-12);
  }
}

TransformOutput Output(const Sample& original, const std::string& text) {
  TransformOutput o;
  o.original_id = original.id;
  o.transformed = MakeTextSample(original.id + "::T", Task::kClassification, text);
  o.transformed.label = original.label;
  o.transform = "T";
  return o;
}

TEST(FilterTest, RejectsAndLogsHighReplacementRatio) {
  Sample orig = MakeTextSample("s1", Task::kClassification, "a b c d e f g h i j");
  orig.label = "positive";
  const std::map<std::string, const Sample*> originals = {{"s1", &orig}};
  const std::vector<TransformOutput> outs = {
      Output(orig, "a x x x x x x x x x"),  // ratio 0.9
      Output(orig, "a b c d e f g h i x"),  // ratio 0.1
  };
  ValidatorConfig config;
  config.enabled = true;
  const FilterResult r = Filter(outs, originals, config);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].transformed.field("text").raw(), "a b c d e f g h i x");
  ASSERT_EQ(r.rejected.size(), 1u);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].metric, "replacement_ratio");
  EXPECT_NEAR(r.log[0].value, 0.9, 1e-12);
  EXPECT_NEAR(r.log[0].threshold, 0.4, 1e-12);
  EXPECT_THAT(RejectionsToJsonl(r.log), ::testing::HasSubstr("replacement_ratio"));
  EXPECT_NEAR(r.kept[0].validator_scores.at("replacement_ratio"), 0.1, 1e-12);
}

TEST(FilterTest, DisabledKeepsEverything) {
  Sample orig = MakeTextSample("s1", Task::kClassification, "a b c");
  orig.label = "positive";
  const std::map<std::string, const Sample*> originals = {{"s1", &orig}};
  const FilterResult r = Filter({Output(orig, "x y z")}, originals, ValidatorConfig{});
  EXPECT_EQ(r.kept.size(), 1u);
  EXPECT_TRUE(r.log.empty());
}

TEST(FilterTest, AdapterMetricNeedsScorer) {
  Sample orig = MakeTextSample("s1", Task::kClassification, "a b c");
  orig.label = "positive";
  const std::map<std::string, const Sample*> originals = {{"s1", &orig}};
  ValidatorConfig config;
  config.enabled = true;
  config.max_perplexity = 50;
  EXPECT_THROW(Filter({Output(orig, "a b d")}, originals, config), ConfigError);
  const MetricScorer scorer = [](const std::string& metric,
                                 const std::vector<const Sample*>&,
                                 const std::vector<const Sample*>& t) {
    EXPECT_EQ(metric, "perplexity");
    return std::vector<double>(t.size(), 80.0);
  };
  const FilterResult r = Filter({Output(orig, "a b d")}, originals, config, scorer);
  EXPECT_TRUE(r.kept.empty());
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].metric, "perplexity");
}

TEST(ValidatorConfigTest, ParsesAndRejectsUnknownKeys) {
  const auto c = ValidatorConfig::FromJson(nlohmann::json::parse(
      R"({"max_ratio": 0.3, "min_bleu": 0.5})"));
  EXPECT_TRUE(c.enabled);
  EXPECT_EQ(c.max_ratio, 0.3);
  EXPECT_EQ(c.min_bleu, 0.5);
  EXPECT_THROW(ValidatorConfig::FromJson(nlohmann::json::parse(R"({"ratio": 1})")),
               ConfigError);
  EXPECT_THROW(ValidatorConfig::FromJson(nlohmann::json::parse(R"({"max_ratio": 2})")),
               ConfigError);
  EXPECT_FALSE(ValidatorConfig::FromJson(nlohmann::json::parse(R"({"enabled": false})")).enabled);
}

TEST(PairScoresTest, ReportsAllIntrinsicMetrics) {
  Sample a = MakeTextSample("s", Task::kClassification, "the cat sat");
  Sample b = MakeTextSample("s", Task::kClassification, "the cat sit");
  const auto s = PairScores(a, b);
  EXPECT_EQ(s.at("edit_distance"), 1.0);
  EXPECT_NEAR(s.at("replacement_ratio"), 1.0 / 3, 1e-12);
  EXPECT_NEAR(s.at("bleu"), Bleu({"the", "cat", "sit"}, {"the", "cat", "sat"}), 1e-12);
}

}  // namespace
}  // namespace flint
