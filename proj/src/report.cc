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

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "flint/error.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::vector<std::string>& ReportGroups() {
  static const std::vector<std::string> kGroups = {
      "morphology",   "paradigmatic-relation", "syntax",        "pragmatics",
      "model-related", "task-specific",        "subpopulation", "attack"};
  return kGroups;
}

std::string GroupOf(const std::string& transform) {
  static const std::map<std::string, std::string> kTable = {
      {"Keyboard", "morphology"},
      {"Ocr", "morphology"},
      {"Typos", "morphology"},
      {"SpellingError", "morphology"},
      {"WordCase", "morphology"},
      {"Contraction", "morphology"},
      {"Tense", "morphology"},
      {"SwapSyn", "paradigmatic-relation"},
      {"SwapAnt", "paradigmatic-relation"},
      {"SwapNum", "paradigmatic-relation"},
      {"AddNeg", "paradigmatic-relation"},
      {"RmvNeg", "paradigmatic-relation"},
      {"SwapNamedEnt", "syntax"},
      {"InsertAdv", "syntax"},
      {"MLMSuggestion", "syntax"},
      {"AppendIrr", "pragmatics"},
      {"TwitterType", "pragmatics"},
      {"AddPunc", "pragmatics"},
      {"RmvPunc", "pragmatics"},
      {"Prejudice", "pragmatics"},
      {"BackTrans", "model-related"},
  };
  std::string first = transform.substr(0, transform.find('+'));
  first = first.substr(0, first.find(':'));
  auto it = kTable.find(first);
  return it == kTable.end() ? "task-specific" : it->second;
}

namespace {

constexpr double kNoValue = -std::numeric_limits<double>::infinity();

double Get(const Scores& s, const std::string& key) {
  auto it = s.find(key);
  return it == s.end() ? kNoValue : it->second;
}

Scores Subtract(const Scores& a, const Scores& b) {
  Scores out;
  for (const auto& [k, v] : a) {
    if (auto it = b.find(k); it != b.end()) out[k] = v - it->second;
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

Scores HumanFor(const std::map<std::string, std::map<std::string, double>>& table,
                const std::string& name) {
  for (const std::string& key : {name, name.substr(0, name.find(':'))}) {
    if (auto it = table.find(key); it != table.end()) {
      return Scores(it->second.begin(), it->second.end());
    }
  }
  return {};
}

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Percent(double v) { return Fixed(100 * v); }

}  // namespace

std::size_t RobustnessReport::row_count() const {
  std::size_t n = 0;
  for (const auto& [g, rows] : groups) n += rows.size();
  return n;
}

RobustnessReport Analyze(const AnalyzeInput& input) {
  if (input.rows.empty() && !input.attack) {
    throw EmptyReportError("no evaluation results to report");
  }
  RobustnessReport report;
  report.model = input.model;
  report.dataset = input.dataset;
  report.validator = input.validator;
  for (const std::string& g : ReportGroups()) report.groups[g];

  bool span = false;
  for (const EvalRow& r : input.rows) span = span || r.original.count("span_f1") > 0;
  report.primary_metric = span ? "span_f1" : "accuracy";

  for (const EvalRow& r : input.rows) {
    ReportRow row;
    row.eval = r;
    if (r.kind == "slice") {
      row.group = "subpopulation";
      row.eval.degradation.clear();
    } else {
      row.group = GroupOf(r.name);
      row.eval.degradation = Subtract(r.original, r.transformed);
      row.human = HumanFor(input.human_eval, r.name);
    }
    report.groups[row.group].push_back(std::move(row));
  }
  if (input.attack) {
    const AttackSummary& a = *input.attack;
    ReportRow row;
    row.group = "attack";
    row.eval.name = "GreedyAttack";
    row.eval.kind = "attack";
    row.eval.original_count = a.total;
    row.eval.transformed_count = a.attempted;
    row.eval.original["accuracy"] = a.accuracy_original;
    row.eval.transformed["accuracy"] = a.accuracy_attacked;
    row.eval.degradation = Subtract(row.eval.original, row.eval.transformed);
    row.extra = {{"success_rate", a.success_rate},
                 {"mean_queries", a.mean_queries},
                 {"attempted", static_cast<double>(a.attempted)},
                 {"succeeded", static_cast<double>(a.succeeded)},
                 {"skipped", static_cast<double>(a.skipped)}};
    report.groups["attack"].push_back(std::move(row));
  }

  const std::string& m = report.primary_metric;
  for (auto& [group, rows] : report.groups) {
    const bool slices = group == "subpopulation";
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const ReportRow& a, const ReportRow& b) {
                       const double x = slices ? -Get(a.eval.transformed, m)
                                               : Get(a.eval.degradation, m);
                       const double y = slices ? -Get(b.eval.transformed, m)
                                               : Get(b.eval.degradation, m);
                       if (x != y) return x > y;
                       return a.eval.name < b.eval.name;
                     });
  }

  std::vector<const ReportRow*> ranked;
  for (const auto& [group, rows] : report.groups) {
    if (group == "subpopulation" || group == "attack") continue;
    for (const ReportRow& r : rows) {
      if (r.eval.degradation.count(m) > 0) ranked.push_back(&r);
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](const ReportRow* a, const ReportRow* b) {
                     const double x = Get(a->eval.degradation, m);
                     const double y = Get(b->eval.degradation, m);
                     if (x != y) return x > y;
                     return a->eval.name < b->eval.name;
                   });
  for (std::size_t i = 0; i < ranked.size() && i < input.worst_k; ++i) {
    report.worst.push_back(ranked[i]->eval.name);
  }
  return report;
}

ojson RobustnessReport::ToJson() const {
  ojson j;
  j["model"] = model;
  j["dataset"] = dataset;
  j["primary_metric"] = primary_metric;
  ojson groups_json = ojson::array();
  for (const std::string& g : ReportGroups()) {
    ojson gj;
    gj["group"] = g;
    ojson rows = ojson::array();
    auto it = groups.find(g);
    if (it != groups.end()) {
      for (const ReportRow& r : it->second) {
        ojson rj = r.eval.ToJson();
        if (!r.extra.empty()) rj["extra"] = ScoresJson(r.extra);
        if (!r.human.empty()) rj["human_eval"] = ScoresJson(r.human);
        rows.push_back(std::move(rj));
      }
    }
    gj["rows"] = std::move(rows);
    groups_json.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups_json);
  j["worst"] = worst;
  if (validator) {
    ojson v;
    v["kept"] = validator->kept;
    v["rejected"] = validator->rejected;
    ojson by = ojson::object();
    for (const auto& [k, n] : validator->rejected_by_metric) by[k] = n;
    v["rejected_by_metric"] = std::move(by);
    j["validator"] = std::move(v);
  }
  return j;
}

RobustnessReport RobustnessReport::FromJson(const json& j) {
  RobustnessReport r;
  try {
    r.model = j.at("model").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.primary_metric = j.at("primary_metric").get<std::string>();
    for (const std::string& g : ReportGroups()) r.groups[g];
    for (const json& gj : j.at("groups")) {
      const std::string g = gj.at("group").get<std::string>();
      for (const json& rj : gj.at("rows")) {
        ReportRow row;
        row.group = g;
        row.eval = EvalRow::FromJson(rj);
        if (rj.contains("extra")) row.extra = ScoresFrom(rj["extra"]);
        if (rj.contains("human_eval")) row.human = ScoresFrom(rj["human_eval"]);
        r.groups[g].push_back(std::move(row));
      }
    }
    r.worst = j.value("worst", std::vector<std::string>{});
    if (j.contains("validator")) {
      ValidatorStats v;
      v.kept = j["validator"].at("kept").get<std::size_t>();
      v.rejected = j["validator"].at("rejected").get<std::size_t>();
      const json by = j["validator"].value("rejected_by_metric", json::object());
      for (const auto& [k, n] : by.items()) {
        v.rejected_by_metric[k] = n.get<std::size_t>();
      }
      r.validator = v;
    }
  } catch (const json::exception& e) {
    throw SchemaError(0, "report", e.what());
  }
  return r;
}

// --- Rendering ---------------------------------------------------------------

namespace {

// Metrics shown for a group: the primary metric first, then the rest.
std::vector<std::string> GroupMetrics(const std::vector<ReportRow>& rows,
                                      const std::string& primary) {
  std::set<std::string> keys;
  for (const ReportRow& r : rows) {
    for (const auto& [k, v] : r.eval.original) keys.insert(k);
    for (const auto& [k, v] : r.eval.transformed) keys.insert(k);
  }
  std::vector<std::string> out;
  if (keys.erase(primary) > 0) out.push_back(primary);
  out.insert(out.end(), keys.begin(), keys.end());
  return out;
}

struct Cell {
  std::string ori;
  std::string trans;
};

Cell MetricCell(const ReportRow& r, const std::string& metric) {
  auto fmt = [](const Scores& s, const std::string& k) {
    auto it = s.find(k);
    return it == s.end() ? std::string("-") : Percent(it->second);
  };
  return {fmt(r.eval.original, metric), fmt(r.eval.transformed, metric)};
}

std::string DeltaCell(const ReportRow& r, const std::string& metric) {
  auto it = r.eval.degradation.find(metric);
  return it == r.eval.degradation.end() ? "-" : Percent(it->second);
}

std::string HumanCell(const ReportRow& r, const std::string& key) {
  auto it = r.human.find(key);
  return it == r.human.end() ? "-" : Fixed(it->second);
}

std::string Notes(const ReportRow& r) {
  if (r.extra.empty()) return "";
  std::string out = "success rate " + Percent(r.extra.at("success_rate")) +
                    "%, mean queries " + Fixed(r.extra.at("mean_queries"));
  return out;
}

std::string RenderMarkdown(const RobustnessReport& report) {
  std::ostringstream os;
  os << "# Robustness report\n\n";
  os << "- Model: `" << report.model << "`\n";
  os << "- Dataset: `" << report.dataset << "`\n";
  os << "- Primary metric: " << report.primary_metric << "\n";
  if (report.validator) {
    os << "- Validator: " << report.validator->kept << " kept, "
       << report.validator->rejected << " rejected";
    for (const auto& [k, n] : report.validator->rejected_by_metric) {
      os << "; " << k << ": " << n;
    }
    os << "\n";
  }
  if (!report.worst.empty()) {
    os << "\n## Most degrading transformations\n\n";
    for (std::size_t i = 0; i < report.worst.size(); ++i) {
      os << i + 1 << ". " << report.worst[i] << "\n";
    }
  }
  for (const std::string& g : ReportGroups()) {
    const auto& rows = report.groups.at(g);
    if (rows.empty()) continue;
    const std::vector<std::string> metrics = GroupMetrics(rows, report.primary_metric);
    os << "\n## " << g << "\n\n| Name | Samples |";
    for (const std::string& m : metrics) os << " " << m << " (Ori. → Trans.) |";
    os << " Δ " << report.primary_metric << " | Plausibility | Grammaticality | Notes |\n";
    os << "|---|---:|";
    for (std::size_t i = 0; i < metrics.size(); ++i) os << "---:|";
    os << "---:|---:|---:|---|\n";
    for (const ReportRow& r : rows) {
      os << "| " << r.eval.name << " | " << r.eval.transformed_count << " |";
      for (const std::string& m : metrics) {
        const Cell c = MetricCell(r, m);
        os << " " << c.ori << " → " << c.trans << " |";
      }
      os << " " << DeltaCell(r, report.primary_metric) << " | "
         << HumanCell(r, "plausibility") << " | " << HumanCell(r, "grammaticality")
         << " | " << Notes(r) << " |\n";
    }
  }
  return os.str();
}

std::string TexEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': case '%': case '$': case '#': case '_': case '{': case '}':
        out += '\\';
        out += c;
        break;
      case '~':
        out += "\\textasciitilde{}";
        break;
      case '^':
        out += "\\textasciicircum{}";
        break;
      case '\\':
        out += "\\textbackslash{}";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string RenderLatex(const RobustnessReport& report) {
  std::ostringstream os;
  os << "% Robustness report for " << TexEscape(report.model) << " on "
     << TexEscape(report.dataset) << "\n";
  for (const std::string& g : ReportGroups()) {
    const auto& rows = report.groups.at(g);
    if (rows.empty()) continue;
    const std::vector<std::string> metrics = GroupMetrics(rows, report.primary_metric);
    const std::size_t columns = 2 + metrics.size() + 1;
    os << "\\begin{table}[t]\n\\centering\n\\begin{tabular}{l"
       << std::string(columns - 1, 'c') << "}\n\\hline\n";
    os << "Name & Samples";
    for (const std::string& m : metrics) {
      os << " & " << TexEscape(m) << " (Ori. $\\rightarrow$ Trans.)";
    }
    os << " & $\\Delta$ " << TexEscape(report.primary_metric) << " \\\\\n\\hline\n";
    for (const ReportRow& r : rows) {
      os << TexEscape(r.eval.name) << " & " << r.eval.transformed_count;
      for (const std::string& m : metrics) {
        const Cell c = MetricCell(r, m);
        os << " & " << c.ori << " $\\rightarrow$ " << c.trans;
      }
      os << " & " << DeltaCell(r, report.primary_metric) << " \\\\\n";
    }
    os << "\\hline\n\\end{tabular}\n\\caption{" << TexEscape(g) << "}\n\\end{table}\n";
  }
  return os.str();
}

}  // namespace

std::string Render(const RobustnessReport& report, const std::string& format) {
  if (format == "json") return report.ToJson().dump(2) + "\n";
  if (format == "markdown") return RenderMarkdown(report);
  if (format == "latex") return RenderLatex(report);
  throw ConfigError("unknown report format \"" + format + "\"");
}

ojson PlotData(const RobustnessReport& report) {
  ojson series = ojson::array();
  for (const std::string& g : ReportGroups()) {
    if (g == "subpopulation" || g == "attack") continue;
    for (const ReportRow& r : report.groups.at(g)) {
      auto it = r.eval.degradation.find(report.primary_metric);
      if (it == r.eval.degradation.end()) continue;
      ojson p;
      p["name"] = r.eval.name;
      p["group"] = g;
      p["original"] = r.eval.original.at(report.primary_metric);
      p["transformed"] = r.eval.transformed.at(report.primary_metric);
      p["degradation"] = it->second;
      series.push_back(std::move(p));
    }
  }
  ojson j;
  j["metric"] = report.primary_metric;
  j["series"] = std::move(series);
  return j;
}

}  // namespace flint
