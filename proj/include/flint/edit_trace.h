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

// Atomic token edits and the traces that record them.
//
// Every transformation is expressed as an EditTrace: per field, a set of
// non-overlapping ReplaceSpan / InsertAt / DeleteSpan edits in ORIGINAL token
// coordinates. Applying the trace rebuilds the field and the induced
// alignment drives label realignment.

#ifndef FLINT_EDIT_TRACE_H_
#define FLINT_EDIT_TRACE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flint/sample.h"
#include "flint/text.h"

namespace flint {

enum class EditKind { kReplace, kInsert, kDelete };

struct Edit {
  EditKind kind = EditKind::kReplace;
  // [start, end) in original coordinates. Inserts have start == end.
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> tokens;
  // Explicit tags for the new tokens of a sequence-labeling sample. Empty
  // means the tags are derived from the covered tokens.
  std::vector<std::string> tags;

  static Edit Replace(std::size_t start, std::size_t end,
                      std::vector<std::string> tokens,
                      std::vector<std::string> tags = {});
  static Edit Insert(std::size_t pos, std::vector<std::string> tokens,
                     std::vector<std::string> tags = {});
  static Edit Delete(std::size_t start, std::size_t end);

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct LabelEdit {
  bool relabeled = false;
  std::string description;

  friend bool operator==(const LabelEdit&, const LabelEdit&) = default;
};

struct EditTrace {
  std::map<std::string, std::vector<Edit>> edits;
  LabelEdit label_edit;

  bool empty() const;
  void Add(const std::string& field, Edit edit);
  void Relabel(std::string description);

  friend bool operator==(const EditTrace&, const EditTrace&) = default;
};

// Provenance of one output token: the original range it came from.
// Kept tokens have end == begin + 1; inserted tokens have begin == end.
struct AlignedToken {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool kept = false;

  friend bool operator==(const AlignedToken&, const AlignedToken&) = default;
};

struct Alignment {
  std::size_t source_size = 0;
  std::vector<AlignedToken> tokens;
  std::vector<std::string> texts;

  // Original index -> output index for surviving tokens.
  std::vector<std::optional<std::size_t>> IndexMap() const;
};

// Sorts and validates `edits` against a field of `size` tokens. Throws
// OverlapError or BoundsError.
std::vector<Edit> NormalizeEdits(std::size_t size, std::span<const Edit> edits);

Alignment Align(const std::vector<std::string>& source,
                std::span<const Edit> edits);

TextField ApplyEdits(const TextField& field, std::span<const Edit> edits);

// Applies every field's edits and realigns labels. Replaced tokens inherit the
// covering label; inserted tokens get "O" unless the edit carries tags.
// Throws LabelSplitError if a label-preserving trace cuts a labeled span.
Sample RemapLabels(const Sample& sample, const EditTrace& trace);

// Rewrites `first` followed by `second` as one trace against `original`.
// Explicit edit tags are not carried over.
EditTrace Compose(const Sample& original, const EditTrace& first,
                  const EditTrace& second);

}  // namespace flint

#endif  // FLINT_EDIT_TRACE_H_
