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

// Helpers shared by the transformation implementations. Not installed.

#ifndef FLINT_SRC_TRANSFORM_UTIL_H_
#define FLINT_SRC_TRANSFORM_UTIL_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flint/random.h"
#include "flint/resources.h"
#include "flint/sample.h"
#include "flint/text.h"
#include "flint/transform.h"

namespace flint::internal {

struct Range {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Decides which edits keep a label-preserving trace valid: frozen tokens are
// never touched, and labeled spans (entities, aspects) are either left alone
// or edited from inside.
class SiteGuard {
 public:
  SiteGuard(const Sample& sample, const std::string& field);

  bool CanReplace(std::size_t start, std::size_t end) const;
  bool CanInsert(std::size_t pos) const;
  bool CanDelete(std::size_t start, std::size_t end) const;
  const std::vector<Range>& spans() const { return spans_; }

 private:
  bool Frozen(std::size_t start, std::size_t end) const;

  const TextField& field_;
  std::vector<Range> spans_;
};

// Alphabetic, at least min_word_len bytes, not frozen.
bool IsEligibleWord(const TextField& field, std::size_t i,
                    const PerturbParams& params);

// Number of words to perturb: max(1, floor(ratio * eligible)).
std::size_t PerturbCount(std::size_t eligible, double ratio);

// Draws PerturbCount(eligible, ratio) sites from `candidates` (fewer if not
// enough), returned in ascending order.
std::vector<std::size_t> PickSites(const std::vector<std::size_t>& candidates,
                                   std::size_t eligible, double ratio, Rng& rng);

// Fields a universal transformation edits.
std::vector<std::string> TextFields(const Sample& sample);

// Sequence-labeling sample whose tags are positional (POS) rather than BIO.
bool IsPosTagged(const Sample& sample);

// A named-entity mention in one field.
struct Mention {
  std::string field;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string category;
  std::string text;  // tokens joined by single spaces
};

// Entity mentions: BIO spans when the sample carries them, otherwise
// longest-match gazetteer hits.
std::vector<Mention> FindMentions(const Sample& sample, const std::string& field,
                                  const Gazetteer& gazetteer);

// Mention surface forms in `tokens`, longest match first, from a name list.
std::vector<Mention> FindNames(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& names,
                               const std::string& field);

// Distinct mention surfaces with every occurrence, skipping occurrences the
// site guard forbids replacing.
struct NameSites {
  std::vector<std::string> names;  // first-occurrence order
  std::map<std::string, std::vector<Mention>> mentions;
  std::map<std::string, std::string> category;
};
NameSites GroupMentions(const Sample& sample, const std::vector<Mention>& all);
// Gazetteer or BIO mentions across every text field.
NameSites CollectNames(const Sample& sample, const Gazetteer& gazetteer);
// Whether any field contains `name` as a token subsequence.
bool SampleMentions(const Sample& sample, const std::string& name);

// One character edit at an inner position (never the first character).
// Operations: insert, delete, replace, and swap when allow_swap.
std::string InnerTypo(const std::string& word, Rng& rng, bool allow_swap);

// Uniform numeral of `digits` digits (no leading zero unless one digit)
// different from `avoid`.
std::string RandomNumeral(std::size_t digits, const std::string& avoid,
                          Rng& rng);

bool IsDeterminer(std::string_view lower);

// Minimal token edits turning `a` into `b` (LCS alignment).
std::vector<Edit> DiffEdits(const std::vector<std::string>& a,
                            const std::vector<std::string>& b);

// --- Verb groups -------------------------------------------------------------

enum class Tense { kPresent, kPast, kProgressive, kPerfect };
enum class Person { kFirst, kThird, kPlural };

struct VerbGroup {
  std::size_t start = 0;
  std::size_t end = 0;    // one past the main verb
  std::size_t main = 0;   // main verb index
  Tense tense = Tense::kPresent;
  Person person = Person::kThird;
  const VerbForms* verb = nullptr;
};

// Finite verb groups found by inflection-table lookup. "do" is only an
// auxiliary and is never reported.
std::vector<VerbGroup> FindVerbGroups(const TextField& field,
                                      const Resources& resources);

// Tokens and POS tags rendering `verb` in `tense` for `person`.
struct Rendered {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};
Rendered RenderVerb(const VerbForms& verb, Tense tense, Person person);

// --- Registry pieces -------------------------------------------------------

// Factories return null for names they do not own.
std::unique_ptr<Transform> MakeUniversalTransform(const std::string& name,
                                                  const TransformOptions& options);
std::unique_ptr<Transform> MakeTaskTransform(const std::string& name,
                                             const TransformOptions& options);
const std::vector<std::string>& UniversalTransformNames();
const std::vector<std::string>& TaskTransformNames();

}  // namespace flint::internal

#endif  // FLINT_SRC_TRANSFORM_UTIL_H_
