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

// Robustness reports: evaluation rows grouped by linguistic level, worst
// transformations, validator totals and human ratings, rendered as JSON,
// Markdown or LaTeX.

#ifndef FLINT_REPORT_H_
#define FLINT_REPORT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/evaluate.h"

namespace flint {

// Report groups in display order.
const std::vector<std::string>& ReportGroups();

// Group of a transformation name. Combinations ("A+B") take the group of
// their first member; unknown names are task-specific.
std::string GroupOf(const std::string& transform);

struct ValidatorStats {
  std::size_t kept = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> rejected_by_metric;

  friend bool operator==(const ValidatorStats&, const ValidatorStats&) = default;
};

struct ReportRow {
  EvalRow eval;
  std::string group;
  Scores extra;  // attack rows: success_rate, mean_queries, ...
  Scores human;  // plausibility, grammaticality when rated
};

struct RobustnessReport {
  std::string model;
  std::string dataset;
  std::string primary_metric;
  std::map<std::string, std::vector<ReportRow>> groups;  // every group present
  std::vector<std::string> worst;  // row names, most degraded first
  std::optional<ValidatorStats> validator;

  std::size_t row_count() const;
  nlohmann::ordered_json ToJson() const;
  static RobustnessReport FromJson(const nlohmann::json& j);
};

struct AnalyzeInput {
  std::string model;
  std::string dataset;
  std::vector<EvalRow> rows;  // transform, combination and slice rows
  std::optional<AttackSummary> attack;
  std::optional<ValidatorStats> validator;
  std::map<std::string, std::map<std::string, double>> human_eval;
  std::size_t worst_k = 5;
};

// Throws EmptyReportError when there are no rows and no attack.
RobustnessReport Analyze(const AnalyzeInput& input);

// format: json | markdown | latex. Throws ConfigError otherwise.
std::string Render(const RobustnessReport& report, const std::string& format);

// Per-transformation degradation series for external plotting.
nlohmann::ordered_json PlotData(const RobustnessReport& report);

}  // namespace flint

#endif  // FLINT_REPORT_H_
