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


#include "flint/report.h"

#include <sstream>
#include <string>
#include <vector>

#include "flint/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace flint {
namespace {

EvalRow Row(const std::string& name, double ori, double trans,
            const std::string& kind = "transform") {
  EvalRow r;
  r.name = name;
  r.kind = kind;
  r.original_count = 10;
  r.transformed_count = 10;
  r.original = {{"accuracy", ori}, {"macro_f1", ori}};
  r.transformed = {{"accuracy", trans}, {"macro_f1", trans}};
  return r;
}

AnalyzeInput Input(std::vector<EvalRow> rows) {
  AnalyzeInput in;
  in.model = "builtin:keyword";
  in.dataset = "toy_sa.jsonl";
  in.rows = std::move(rows);
  return in;
}

TEST(GroupTest, BaseNamesAndCombinations) {
  EXPECT_EQ(ReportGroups().size(), 8u);
  EXPECT_EQ(GroupOf("Typos"), "morphology");
  EXPECT_EQ(GroupOf("WordCase:upper"), "morphology");
  EXPECT_EQ(GroupOf("SwapSyn+Typos"), "paradigmatic-relation");
  EXPECT_EQ(GroupOf("BackTrans"), "model-related");
  EXPECT_EQ(GroupOf("RevTgt"), "task-specific");
}

TEST(AnalyzeTest, SingleResultGivesSingleRow) {
  const RobustnessReport r = Analyze(Input({Row("Typos", 0.9, 0.8)}));
  EXPECT_EQ(r.row_count(), 1u);
  EXPECT_EQ(r.groups.size(), ReportGroups().size());
  ASSERT_EQ(r.groups.at("morphology").size(), 1u);
  EXPECT_NEAR(r.groups.at("morphology")[0].eval.degradation.at("accuracy"), 0.1, 1e-12);
  EXPECT_THAT(r.worst, ::testing::ElementsAre("Typos"));
}

TEST(AnalyzeTest, WorstIsLargestDrop) {
  AnalyzeInput in = Input({Row("Typos", 0.9, 0.85), Row("SwapSyn", 0.9, 0.6)});
  in.worst_k = 1;
  const RobustnessReport r = Analyze(in);
  EXPECT_THAT(r.worst, ::testing::ElementsAre("SwapSyn"));
  in.worst_k = 5;
  EXPECT_THAT(Analyze(in).worst, ::testing::ElementsAre("SwapSyn", "Typos"));
}

TEST(AnalyzeTest, EmptyInputThrows) {
  EXPECT_THROW(Analyze(Input({})), EmptyReportError);
  AnalyzeInput attack_only = Input({});
  attack_only.attack = AttackSummary{};
  EXPECT_EQ(Analyze(attack_only).groups.at("attack").size(), 1u);
}

TEST(AnalyzeTest, RowsLandInOneGroupEach) {
  std::vector<EvalRow> rows = {Row("Typos", 1, 0.5),         Row("Ocr", 1, 0.7),
                               Row("SwapAnt", 1, 0.9),       Row("InsertAdv", 1, 1),
                               Row("AddPunc", 1, 0.95),      Row("RevTgt", 1, 0.2),
                               Row("Typos+SwapSyn", 1, 0.4, "combination"),
                               Row("length-top-0.2", 1, 0.3, "slice"),
                               Row("phrase-negation-all", 1, 0.6, "slice")};
  AnalyzeInput in = Input(rows);
  AttackSummary a;
  a.total = 10;
  a.attempted = 8;
  a.succeeded = 4;
  a.success_rate = 0.5;
  a.accuracy_original = 0.8;
  a.accuracy_attacked = 0.4;
  in.attack = a;
  const RobustnessReport r = Analyze(in);
  EXPECT_EQ(r.row_count(), rows.size() + 1);
  const auto& morph = r.groups.at("morphology");
  ASSERT_EQ(morph.size(), 3u);
  EXPECT_EQ(morph[0].eval.name, "Typos+SwapSyn");  // drop 0.6 > 0.5 > 0.3
  EXPECT_EQ(morph[2].eval.name, "Ocr");
  const auto& slices = r.groups.at("subpopulation");
  EXPECT_EQ(slices[0].eval.name, "length-top-0.2");
  EXPECT_TRUE(slices[0].eval.degradation.empty());
  EXPECT_EQ(r.groups.at("attack")[0].extra.at("success_rate"), 0.5);
  EXPECT_EQ(r.worst.front(), "RevTgt");
  EXPECT_EQ(std::count(r.worst.begin(), r.worst.end(), "length-top-0.2"), 0);
}

TEST(AnalyzeTest, SpanF1BecomesPrimary) {
  EvalRow row;
  row.name = "SwapNamedEnt";
  row.kind = "transform";
  row.original = {{"span_f1", 1.0}, {"precision", 1.0}};
  row.transformed = {{"span_f1", 0.5}, {"precision", 0.5}};
  const RobustnessReport r = Analyze(Input({row}));
  EXPECT_EQ(r.primary_metric, "span_f1");
  EXPECT_EQ(PlotData(r)["series"][0]["degradation"], 0.5);
}

TEST(AnalyzeTest, HumanRatingsByFullThenBaseName) {
  AnalyzeInput in = Input({Row("WordCase:upper", 1, 0.6), Row("Typos", 1, 0.8)});
  in.human_eval = {{"WordCase", {{"plausibility", 3.5}}},
                   {"Typos", {{"plausibility", 4.0}, {"grammaticality", 2.5}}}};
  const RobustnessReport r = Analyze(in);
  const std::string md = Render(r, "markdown");
  EXPECT_THAT(md, ::testing::HasSubstr("| WordCase:upper | 10 | 100.00 → 60.00 |"));
  EXPECT_THAT(md, ::testing::HasSubstr("| 40.00 | 3.50 | - |"));
  EXPECT_THAT(md, ::testing::HasSubstr("| 20.00 | 4.00 | 2.50 |"));
}

RobustnessReport Rich() {
  AnalyzeInput in = Input({Row("Typos", 0.9, 0.8), Row("SwapSyn_x", 0.9, 0.7),
                           Row("Typos+WordCase:upper", 0.9, 0.5, "combination"),
                           Row("length-bottom-0.2", 0.9, 0.95, "slice")});
  AttackSummary a;
  a.total = 4;
  a.attempted = 4;
  a.succeeded = 1;
  a.success_rate = 0.25;
  a.mean_queries = 7.5;
  in.attack = a;
  in.validator = ValidatorStats{12, 3, {{"replacement_ratio", 3}}};
  return Analyze(in);
}

TEST(RenderTest, JsonRoundTripRendersIdentically) {
  const RobustnessReport r = Rich();
  const RobustnessReport back =
      RobustnessReport::FromJson(nlohmann::json::parse(Render(r, "json")));
  EXPECT_EQ(back.ToJson(), r.ToJson());
  EXPECT_EQ(Render(back, "markdown"), Render(r, "markdown"));
  EXPECT_EQ(Render(back, "latex"), Render(r, "latex"));
  EXPECT_EQ(Render(r, "markdown"), Render(r, "markdown"));
}

// Structural checks a LaTeX compiler would trip over: unbalanced braces and
// rows whose cell count disagrees with the column spec.
void LintLatex(const std::string& tex) {
  int depth = 0;
  for (std::size_t i = 0; i < tex.size(); ++i) {
    if (tex[i] == '\\') {
      ++i;
      continue;
    }
    if (tex[i] == '{') ++depth;
    if (tex[i] == '}') --depth;
    ASSERT_GE(depth, 0) << "at " << i;
  }
  EXPECT_EQ(depth, 0);
  std::istringstream in(tex);
  std::string line;
  std::size_t columns = 0;
  int tables = 0;
  while (std::getline(in, line)) {
    if (line.rfind("\\begin{tabular}{", 0) == 0) {
      columns = line.size() - std::string("\\begin{tabular}{}").size();
      ++tables;
      continue;
    }
    if (line.size() < 2 || line.substr(line.size() - 2) != "\\\\") continue;
    std::size_t amps = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '&' && (i == 0 || line[i - 1] != '\\')) ++amps;
    }
    EXPECT_EQ(amps + 1, columns) << line;
  }
  EXPECT_GT(tables, 0);
  EXPECT_EQ(std::count(tex.begin(), tex.end(), '$') % 2, 0);
}

TEST(RenderTest, LatexIsWellFormed) {
  const std::string tex = Render(Rich(), "latex");
  LintLatex(tex);
  EXPECT_THAT(tex, ::testing::HasSubstr("SwapSyn\\_x"));
  EXPECT_THAT(tex, ::testing::HasSubstr("90.00 $\\rightarrow$ 50.00"));
}

TEST(RenderTest, MarkdownSections) {
  const std::string md = Render(Rich(), "markdown");
  EXPECT_THAT(md, ::testing::HasSubstr("- Validator: 12 kept, 3 rejected; replacement_ratio: 3"));
  EXPECT_THAT(md, ::testing::HasSubstr("1. Typos+WordCase:upper"));
  EXPECT_THAT(md, ::testing::HasSubstr("success rate 25.00%, mean queries 7.50"));
  EXPECT_THAT(md, ::testing::Not(::testing::HasSubstr("## pragmatics")));
}

TEST(RenderTest, UnknownFormat) {
  EXPECT_THROW(Render(Rich(), "html"), ConfigError);
}

TEST(RenderTest, PlotSeriesSkipsSlicesAndAttack) {
  const auto p = PlotData(Rich());
  EXPECT_EQ(p["metric"], "accuracy");
  EXPECT_EQ(p["series"].size(), 3u);
}

}  // namespace
}  // namespace flint
