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

// Subpopulations: dataset slices selected by an attribute of each sample
// rather than by rewriting it.
//
// Percentile attributes (length, lm_score) sort samples ascending by
// (value, index) and keep max(1, round-half-up(p * n)) of them from the
// requested end; "top" is the largest values. Phrase and prejudice
// attributes keep every matching sample. Members are listed in parent order.

#ifndef FLINT_SUBPOPULATION_H_
#define FLINT_SUBPOPULATION_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "flint/dataset.h"
#include "flint/resources.h"

namespace flint {

enum class SliceEnd { kTop, kBottom, kAll };

struct SliceSpec {
  // length | lm_score | phrase:negation | phrase:question | prejudice:man |
  // prejudice:woman
  std::string attribute = "length";
  SliceEnd end = SliceEnd::kTop;
  double fraction = 0.2;

  bool percentile() const;
  // Throws ConfigError on an unknown attribute or a bad fraction.
  void Validate() const;
  // Stable name used for files and report rows, e.g. "length-top-0.2".
  std::string Name() const;

  nlohmann::ordered_json ToJson() const;
  static SliceSpec FromJson(const nlohmann::json& j);

  friend bool operator==(const SliceSpec&, const SliceSpec&) = default;
};

struct Slice {
  SliceSpec spec;
  std::string parent;
  std::size_t parent_size = 0;
  std::vector<std::string> members;

  friend bool operator==(const Slice&, const Slice&) = default;
};

// One fluency score per sample; larger means less fluent.
using ScoreFn = std::function<std::vector<double>(const Dataset&)>;

std::size_t SliceSize(std::size_t n, double fraction);

// Token count of every text field.
std::size_t SampleLength(const Sample& sample);

// Add-one smoothed word bigram model fit on the dataset itself; each sample's
// score is -1/(N+1) * sum log P over its N tokens plus the end marker.
std::vector<double> BigramScores(const Dataset& dataset);

bool HasNegation(const Sample& sample, const Resources& resources);
bool IsQuestion(const Sample& sample, const Resources& resources);
// Exclusive gendered-pronoun membership: "man", "woman" or "" for neither.
std::string PronounGender(const Sample& sample);

// Slices by `spec`. `scorer` replaces the builtin bigram model for lm_score.
Slice MakeSlice(const Dataset& dataset, const SliceSpec& spec,
                const Resources& resources = DefaultResources(),
                const ScoreFn& scorer = nullptr);

// Samples of `dataset` named by `slice`, in parent order.
Dataset SliceDataset(const Dataset& dataset, const Slice& slice);

// Persistence: a header line with the spec, then one {"id": ..} per member.
std::string SliceToJsonl(const Slice& slice);
Slice SliceFromJsonl(std::string_view text);

}  // namespace flint

#endif  // FLINT_SUBPOPULATION_H_
