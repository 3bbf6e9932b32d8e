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

// Intrinsic quality metrics for (original, transformed) pairs and threshold
// filtering.
//
// Sentence BLEU used here, with candidate length c, reference length r and
// clipped n-gram matches m_n over c_n candidate n-grams (n = 1..4):
//   p_1 = m_1 / c_1                   (no smoothing)
//   p_n = (m_n + 1) / (c_n + 1)       for n >= 2
//   BP  = 1 if c > r, exp(1 - r / c) if 0 < c <= r, 0 if c = 0
//   BLEU = BP * exp(mean_n log p_n), and 0 whenever p_1 = 0.

#ifndef FLINT_VALIDATE_H_
#define FLINT_VALIDATE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "flint/sample.h"
#include "flint/transform.h"

namespace flint {

// Levenshtein distance over Unicode code points, unit costs.
std::size_t EditDistance(std::string_view a, std::string_view b);

std::size_t LcsLength(const std::vector<std::string>& a,
                      const std::vector<std::string>& b);

// 1 - |LCS| / max(|a|, |b|); 0 when both are empty.
double ReplacementRatio(const std::vector<std::string>& original,
                        const std::vector<std::string>& transformed);

double BrevityPenalty(std::size_t candidate_len, std::size_t reference_len);
double Bleu(const std::vector<std::string>& candidate,
            const std::vector<std::string>& reference);

// edit_distance, replacement_ratio and bleu between two samples, over the
// task's text fields joined in canonical order.
std::map<std::string, double> PairScores(const Sample& original,
                                         const Sample& transformed);

// Model-backed metrics ("perplexity", "similarity") scored through an
// adapter: one value per transformed sample.
using MetricScorer = std::function<std::vector<double>(
    const std::string& metric, const std::vector<const Sample*>& originals,
    const std::vector<const Sample*>& transformed)>;

struct ValidatorConfig {
  bool enabled = false;  // off: every output is kept
  double max_ratio = 0.4;
  std::optional<double> min_bleu;
  std::optional<double> max_edit_distance;
  std::optional<double> max_perplexity;  // adapter
  std::optional<double> min_similarity;  // adapter

  bool needs_adapter() const { return max_perplexity || min_similarity; }
  static ValidatorConfig FromJson(const nlohmann::json& j);
  nlohmann::ordered_json ToJson() const;
};

struct Rejection {
  std::string id;
  std::string metric;
  double value = 0;
  double threshold = 0;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct FilterResult {
  std::vector<TransformOutput> kept;
  std::vector<TransformOutput> rejected;
  std::vector<Rejection> log;  // one entry per failed threshold
};

// Scores every output against its original (looked up by original_id) and
// drops those outside the thresholds. Outputs without an original (generated
// samples) are scored only by adapter metrics. Throws ConfigError when an
// adapter metric is configured without a scorer.
FilterResult Filter(const std::vector<TransformOutput>& outputs,
                    const std::map<std::string, const Sample*>& originals,
                    const ValidatorConfig& config,
                    const MetricScorer& scorer = nullptr);

std::string RejectionsToJsonl(const std::vector<Rejection>& log);

}  // namespace flint

#endif  // FLINT_VALIDATE_H_
