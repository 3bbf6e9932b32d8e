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

#include "flint/error.h"
#include "flint/text.h"

namespace flint {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

std::size_t EditDistance(std::string_view a, std::string_view b) {
  const std::u32string x = DecodeUtf8(a);
  const std::u32string y = DecodeUtf8(b);
  std::vector<std::size_t> row(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (x[i - 1] != y[j - 1])});
      diag = up;
    }
  }
  return row[y.size()];
}

std::size_t LcsLength(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double ReplacementRatio(const std::vector<std::string>& original,
                        const std::vector<std::string>& transformed) {
  const std::size_t longest = std::max(original.size(), transformed.size());
  if (longest == 0) return 0.0;
  return 1.0 - static_cast<double>(LcsLength(original, transformed)) /
                   static_cast<double>(longest);
}

double BrevityPenalty(std::size_t c, std::size_t r) {
  if (c == 0) return 0.0;
  if (c > r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

double Bleu(const std::vector<std::string>& candidate,
            const std::vector<std::string>& reference) {
  const double bp = BrevityPenalty(candidate.size(), reference.size());
  if (bp == 0.0) return 0.0;
  double log_sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::vector<std::string>, std::size_t> ref_counts, cand_counts;
    for (std::size_t i = 0; i + n <= reference.size(); ++i) {
      ++ref_counts[{reference.begin() + i, reference.begin() + i + n}];
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i + n <= candidate.size(); ++i) {
      ++cand_counts[{candidate.begin() + i, candidate.begin() + i + n}];
      ++total;
    }
    std::size_t matches = 0;
    for (const auto& [gram, count] : cand_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    double p;
    if (n == 1) {
      if (matches == 0) return 0.0;
      p = static_cast<double>(matches) / static_cast<double>(total);
    } else {
      p = static_cast<double>(matches + 1) / static_cast<double>(total + 1);
    }
    log_sum += std::log(p);
  }
  return bp * std::exp(log_sum / 4.0);
}

namespace {

std::vector<std::string> AllTokens(const Sample& s) {
  std::vector<std::string> out;
  for (const std::string& name : TaskFields(s.task)) {
    const auto t = s.field(name).texts();
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::string AllText(const Sample& s) {
  std::string out;
  for (const std::string& name : TaskFields(s.task)) {
    if (!out.empty()) out += ' ';
    out += s.field(name).raw();
  }
  return out;
}

}  // namespace

std::map<std::string, double> PairScores(const Sample& original,
                                         const Sample& transformed) {
  const auto a = AllTokens(original);
  const auto b = AllTokens(transformed);
  return {
      {"bleu", Bleu(b, a)},
      {"edit_distance",
       static_cast<double>(EditDistance(AllText(original), AllText(transformed)))},
      {"replacement_ratio", ReplacementRatio(a, b)},
  };
}

ValidatorConfig ValidatorConfig::FromJson(const json& j) {
  ValidatorConfig c;
  try {
    c.enabled = j.value("enabled", true);
    c.max_ratio = j.value("max_ratio", 0.4);
    if (j.contains("min_bleu")) c.min_bleu = j.at("min_bleu").get<double>();
    if (j.contains("max_edit_distance")) {
      c.max_edit_distance = j.at("max_edit_distance").get<double>();
    }
    if (j.contains("max_perplexity")) {
      c.max_perplexity = j.at("max_perplexity").get<double>();
    }
    if (j.contains("min_similarity")) {
      c.min_similarity = j.at("min_similarity").get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad validators section: ") + e.what());
  }
  for (const auto& [k, _] : j.items()) {
    if (k != "enabled" && k != "max_ratio" && k != "min_bleu" && k != "max_edit_distance" &&
        k != "max_perplexity" && k != "min_similarity") {
      throw ConfigError("unknown validator setting \"" + k + "\"");
    }
  }
  if (c.max_ratio < 0 || c.max_ratio > 1) {
    throw ConfigError("validators.max_ratio must be in [0, 1]");
  }
  return c;
}

ojson ValidatorConfig::ToJson() const {
  ojson j = ojson::object();
  if (!enabled) return j;
  j["max_ratio"] = max_ratio;
  if (min_bleu) j["min_bleu"] = *min_bleu;
  if (max_edit_distance) j["max_edit_distance"] = *max_edit_distance;
  if (max_perplexity) j["max_perplexity"] = *max_perplexity;
  if (min_similarity) j["min_similarity"] = *min_similarity;
  return j;
}

FilterResult Filter(const std::vector<TransformOutput>& outputs,
                    const std::map<std::string, const Sample*>& originals,
                    const ValidatorConfig& config, const MetricScorer& scorer) {
  if (config.enabled && config.needs_adapter() && !scorer) {
    throw ConfigError("validator needs an adapter for model-scored metrics");
  }
  std::vector<TransformOutput> scored = outputs;
  std::vector<const Sample*> origs;
  std::vector<const Sample*> trans;
  for (TransformOutput& o : scored) {
    auto it = originals.find(o.original_id);
    const Sample* orig = it == originals.end() ? nullptr : it->second;
    if (orig != nullptr) {
      for (const auto& [k, v] : PairScores(*orig, o.transformed)) {
        o.validator_scores[k] = v;
      }
    }
    origs.push_back(orig);
    trans.push_back(&o.transformed);
  }
  if (config.enabled) {
    for (const char* metric : {"perplexity", "similarity"}) {
      const bool wanted = std::string(metric) == "perplexity"
                              ? config.max_perplexity.has_value()
                              : config.min_similarity.has_value();
      if (!wanted || scored.empty()) continue;
      const std::vector<double> values = scorer(metric, origs, trans);
      if (values.size() != scored.size()) {
        throw ProtocolError(std::string(metric) + " scorer returned " +
                            std::to_string(values.size()) + " values for " +
                            std::to_string(scored.size()) + " outputs");
      }
      for (std::size_t i = 0; i < scored.size(); ++i) {
        scored[i].validator_scores[metric] = values[i];
      }
    }
  }

  FilterResult result;
  for (TransformOutput& o : scored) {
    bool ok = true;
    auto check = [&](const char* metric, std::optional<double> bound, bool upper) {
      if (!bound) return;
      auto it = o.validator_scores.find(metric);
      if (it == o.validator_scores.end()) return;
      if (upper ? it->second > *bound : it->second < *bound) {
        result.log.push_back({o.transformed.id, metric, it->second, *bound});
        ok = false;
      }
    };
    if (config.enabled) {
      check("replacement_ratio", config.max_ratio, true);
      check("bleu", config.min_bleu, false);
      check("edit_distance", config.max_edit_distance, true);
      check("perplexity", config.max_perplexity, true);
      check("similarity", config.min_similarity, false);
    }
    (ok ? result.kept : result.rejected).push_back(std::move(o));
  }
  return result;
}

std::string RejectionsToJsonl(const std::vector<Rejection>& log) {
  std::string out;
  for (const Rejection& r : log) {
    ojson j;
    j["id"] = r.id;
    j["metric"] = r.metric;
    j["value"] = r.value;
    j["threshold"] = r.threshold;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace flint
