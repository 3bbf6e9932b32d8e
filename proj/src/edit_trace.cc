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

#include "flint/edit_trace.h"

#include <algorithm>
#include <limits>
#include <set>

#include "flint/error.h"

namespace flint {

Edit Edit::Replace(std::size_t start, std::size_t end,
                   std::vector<std::string> tokens,
                   std::vector<std::string> tags) {
  return Edit{EditKind::kReplace, start, end, std::move(tokens),
              std::move(tags)};
}

Edit Edit::Insert(std::size_t pos, std::vector<std::string> tokens,
                  std::vector<std::string> tags) {
  return Edit{EditKind::kInsert, pos, pos, std::move(tokens), std::move(tags)};
}

Edit Edit::Delete(std::size_t start, std::size_t end) {
  return Edit{EditKind::kDelete, start, end, {}, {}};
}

bool EditTrace::empty() const {
  for (const auto& [name, list] : edits) {
    if (!list.empty()) return false;
  }
  return true;
}

void EditTrace::Add(const std::string& field, Edit edit) {
  edits[field].push_back(std::move(edit));
}

void EditTrace::Relabel(std::string description) {
  if (label_edit.relabeled && !label_edit.description.empty()) {
    label_edit.description += "; " + description;
  } else {
    label_edit.description = std::move(description);
  }
  label_edit.relabeled = true;
}

std::vector<std::optional<std::size_t>> Alignment::IndexMap() const {
  std::vector<std::optional<std::size_t>> map(source_size);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (tokens[k].kept) map[tokens[k].begin] = k;
  }
  return map;
}

std::vector<Edit> NormalizeEdits(std::size_t size,
                                 std::span<const Edit> edits) {
  std::vector<Edit> sorted(edits.begin(), edits.end());
  for (const Edit& e : sorted) {
    if (e.kind == EditKind::kInsert) {
      if (e.start != e.end) throw BoundsError("insert with non-empty range");
      if (e.start > size) {
        throw BoundsError("insert at " + std::to_string(e.start) +
                          " beyond field of " + std::to_string(size));
      }
      if (e.tokens.empty()) throw BoundsError("insert of zero tokens");
    } else {
      if (e.start >= e.end || e.end > size) {
        throw BoundsError("span [" + std::to_string(e.start) + "," +
                          std::to_string(e.end) + ") invalid for field of " +
                          std::to_string(size));
      }
      if (e.kind == EditKind::kReplace && e.tokens.empty()) {
        throw BoundsError("replace with zero tokens");
      }
      if (e.kind == EditKind::kDelete && !e.tokens.empty()) {
        throw BoundsError("delete carrying tokens");
      }
    }
    if (!e.tags.empty() && e.tags.size() != e.tokens.size()) {
      throw BoundsError("edit tag count differs from token count");
    }
  }
  // Inserts sort before a range starting at the same position.
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Edit& a, const Edit& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return (a.kind == EditKind::kInsert) &&
                            (b.kind != EditKind::kInsert);
                   });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Edit& prev = sorted[i - 1];
    const Edit& cur = sorted[i];
    const bool prev_insert = prev.kind == EditKind::kInsert;
    const bool cur_insert = cur.kind == EditKind::kInsert;
    bool overlap = false;
    if (prev_insert && cur_insert) {
      overlap = prev.start == cur.start;
    } else if (prev_insert) {
      overlap = false;  // insert at p, range starting at >= p
    } else {
      // prev is a range; anything starting strictly inside it overlaps.
      overlap = cur.start < prev.end;
    }
    if (overlap) {
      throw OverlapError("edits at " + std::to_string(prev.start) + " and " +
                         std::to_string(cur.start) + " overlap");
    }
  }
  return sorted;
}

Alignment Align(const std::vector<std::string>& source,
                std::span<const Edit> edits) {
  const std::vector<Edit> sorted = NormalizeEdits(source.size(), edits);
  Alignment out;
  out.source_size = source.size();
  std::size_t next = 0;
  std::size_t i = 0;
  auto emit_edit = [&](const Edit& e) {
    for (const std::string& t : e.tokens) {
      out.tokens.push_back({e.start, e.end, false});
      out.texts.push_back(t);
    }
  };
  while (i <= source.size()) {
    bool consumed_range = false;
    while (next < sorted.size() && sorted[next].start == i) {
      const Edit& e = sorted[next++];
      emit_edit(e);
      if (e.kind != EditKind::kInsert) {
        i = e.end;
        consumed_range = true;
        break;
      }
    }
    if (consumed_range) continue;
    if (i == source.size()) break;
    out.tokens.push_back({i, i + 1, true});
    out.texts.push_back(source[i]);
    ++i;
  }
  return out;
}

TextField ApplyEdits(const TextField& field, std::span<const Edit> edits) {
  const Alignment alignment = Align(field.texts(), edits);
  TextField out = TextField::FromTokens(alignment.texts);
  const auto map = alignment.IndexMap();
  std::set<std::size_t> frozen;
  for (std::size_t i : field.frozen()) {
    if (map[i]) frozen.insert(*map[i]);
  }
  out.set_frozen(std::move(frozen));
  return out;
}

namespace {

struct RemappedSpan {
  bool dropped = false;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Maps original span [s, t) through the alignment. In strict mode any edit
// that cuts the span raises LabelSplitError.
RemappedSpan RemapSpan(const Alignment& a, std::size_t s, std::size_t t,
                       bool strict, const std::string& what) {
  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = 0;
  std::vector<bool> covered(t - s, false);
  for (std::size_t k = 0; k < a.tokens.size(); ++k) {
    const AlignedToken& tok = a.tokens[k];
    bool inside = false;
    if (tok.begin == tok.end) {
      inside = tok.begin > s && tok.begin < t;
      if (inside && strict) {
        throw LabelSplitError("insertion inside " + what);
      }
    } else if (tok.begin < t && tok.end > s) {
      inside = true;
      if (strict && (tok.begin < s || tok.end > t)) {
        throw LabelSplitError("edit crosses the boundary of " + what);
      }
      for (std::size_t i = std::max(tok.begin, s); i < std::min(tok.end, t);
           ++i) {
        covered[i - s] = true;
      }
    }
    if (inside) {
      lo = std::min(lo, k);
      hi = std::max(hi, k + 1);
    }
  }
  const auto n_covered = std::count(covered.begin(), covered.end(), true);
  if (n_covered == 0) return {true, 0, 0};
  if (strict && n_covered != static_cast<long>(covered.size())) {
    throw LabelSplitError("deletion inside " + what);
  }
  return {false, lo, hi};
}

std::vector<std::string> RemapTags(const Sample& sample,
                                   const Alignment& a,
                                   const std::vector<Edit>& sorted,
                                   bool strict) {
  const std::vector<std::string>& tags = sample.tags;
  std::vector<std::string> out(a.tokens.size(), "O");

  if (IsBioScheme(tags)) {
    std::vector<SpanLabel> spans;
    for (const SpanLabel& span : BioToSpans("text", tags)) {
      const RemappedSpan r =
          RemapSpan(a, span.start, span.end, strict,
                    span.tag + " span [" + std::to_string(span.start) + "," +
                        std::to_string(span.end) + ")");
      if (!r.dropped) spans.push_back({"text", r.start, r.end, span.tag});
    }
    out = SpansToBio(a.tokens.size(), spans);
  } else {
    // Positional tags: 1:1 replacements keep their own tag, merges and
    // splits take the first covered token's tag.
    std::size_t k = 0;
    while (k < a.tokens.size()) {
      const AlignedToken& tok = a.tokens[k];
      if (tok.kept) {
        out[k] = tags[tok.begin];
        ++k;
        continue;
      }
      std::size_t run = k;
      while (run < a.tokens.size() && !a.tokens[run].kept &&
             a.tokens[run].begin == tok.begin && a.tokens[run].end == tok.end) {
        ++run;
      }
      const std::size_t width = tok.end - tok.begin;
      for (std::size_t j = k; j < run; ++j) {
        if (width == 0) {
          out[j] = "O";
        } else if (width == run - k) {
          out[j] = tags[tok.begin + (j - k)];
        } else {
          out[j] = tags[tok.begin];
        }
      }
      k = run;
    }
  }

  // Explicit tags override derived ones.
  std::size_t k = 0;
  std::size_t e = 0;
  while (k < a.tokens.size()) {
    const AlignedToken& tok = a.tokens[k];
    if (tok.kept) {
      ++k;
      continue;
    }
    while (e < sorted.size() &&
           (sorted[e].kind == EditKind::kDelete ||
            sorted[e].start != tok.begin || sorted[e].end != tok.end)) {
      ++e;
    }
    if (e >= sorted.size()) break;
    const Edit& edit = sorted[e];
    for (std::size_t j = 0; j < edit.tokens.size(); ++j) {
      if (!edit.tags.empty()) out[k + j] = edit.tags[j];
    }
    k += edit.tokens.size();
    ++e;
  }
  return out;
}

}  // namespace

Sample RemapLabels(const Sample& sample, const EditTrace& trace) {
  for (const auto& [name, list] : trace.edits) {
    if (!sample.fields.count(name)) {
      throw BoundsError("trace edits unknown field \"" + name + "\"");
    }
  }
  const bool strict = !trace.label_edit.relabeled;
  Sample out = sample;
  for (const auto& [name, list] : trace.edits) {
    if (list.empty()) continue;
    const TextField& field = sample.fields.at(name);
    const std::vector<Edit> sorted = NormalizeEdits(field.size(), list);
    const Alignment a = Align(field.texts(), sorted);
    out.fields[name] = ApplyEdits(field, sorted);

    if (name != "text") continue;
    if (sample.task == Task::kSequenceLabeling) {
      out.tags = RemapTags(sample, a, sorted, strict);
    } else if (sample.task == Task::kAspectSentiment) {
      out.aspects.clear();
      const TextField& new_field = out.fields[name];
      for (std::size_t i = 0; i < sample.aspects.size(); ++i) {
        const Aspect& asp = sample.aspects[i];
        const RemappedSpan r = RemapSpan(a, asp.start, asp.end, strict,
                                         "aspect \"" + asp.term + "\"");
        if (r.dropped) {
          throw LabelSplitError("aspect \"" + asp.term + "\" deleted");
        }
        Aspect moved = asp;
        moved.start = r.start;
        moved.end = r.end;
        moved.term = new_field.raw().substr(
            new_field.tokens()[r.start].char_start,
            new_field.tokens()[r.end - 1].char_end -
                new_field.tokens()[r.start].char_start);
        out.aspects.push_back(std::move(moved));
      }
    }
  }
  return out;
}

EditTrace Compose(const Sample& original, const EditTrace& first,
                  const EditTrace& second) {
  EditTrace out;
  out.label_edit = first.label_edit;
  if (second.label_edit.relabeled) out.Relabel(second.label_edit.description);

  for (const auto& [name, field] : original.fields) {
    static const std::vector<Edit> kNone;
    auto find = [&](const EditTrace& t) -> const std::vector<Edit>& {
      auto it = t.edits.find(name);
      return it == t.edits.end() ? kNone : it->second;
    };
    const std::vector<Edit>& e1 = find(first);
    const std::vector<Edit>& e2 = find(second);
    if (e1.empty() && e2.empty()) continue;

    const Alignment mid = Align(field.texts(), e1);
    const Alignment fin = Align(mid.texts, e2);
    const std::size_t n0 = field.size();

    // Provenance of every final token in original coordinates.
    std::vector<AlignedToken> prov(fin.tokens.size());
    for (std::size_t k = 0; k < fin.tokens.size(); ++k) {
      const AlignedToken& f = fin.tokens[k];
      if (f.kept) {
        prov[k] = mid.tokens[f.begin];
      } else if (f.begin == f.end) {
        const std::size_t q = f.begin;
        std::size_t p = n0;
        if (q < mid.tokens.size()) p = mid.tokens[q].begin;
        if (q > 0 && !mid.tokens[q - 1].kept && mid.tokens[q - 1].end > p) {
          // Inserted between two tokens of one earlier replacement.
          prov[k] = mid.tokens[q - 1];
        } else {
          prov[k] = {p, p, false};
        }
      } else {
        std::size_t lo = std::numeric_limits<std::size_t>::max();
        std::size_t hi = 0;
        for (std::size_t j = f.begin; j < f.end; ++j) {
          lo = std::min(lo, mid.tokens[j].begin);
          hi = std::max(hi, mid.tokens[j].end);
        }
        prov[k] = {lo, std::max(lo, hi), false};
      }
    }

    // Neighbouring replacements whose ranges overlap collapse into one.
    std::size_t cluster_first = 0;
    std::size_t cb = 0;
    std::size_t ce = 0;
    bool active = false;
    auto close = [&](std::size_t stop) {
      if (!active) return;
      for (std::size_t j = cluster_first; j < stop; ++j) prov[j] = {cb, ce, false};
      active = false;
    };
    for (std::size_t j = 0; j < prov.size(); ++j) {
      const AlignedToken p = prov[j];
      if (p.kept) {
        close(j);
        continue;
      }
      const bool overlaps =
          active && ((p.begin < p.end && cb < ce && p.begin < ce && cb < p.end) ||
                     (p.begin == p.end && cb < p.begin && p.begin < ce) ||
                     (p.begin == cb && p.end == ce));
      if (overlaps) {
        cb = std::min(cb, p.begin);
        ce = std::max(ce, p.end);
      } else {
        close(j);
        active = true;
        cluster_first = j;
        cb = p.begin;
        ce = p.end;
      }
    }
    close(prov.size());

    std::vector<bool> covered(n0, false);
    std::size_t k = 0;
    while (k < prov.size()) {
      const AlignedToken p = prov[k];
      if (p.kept) {
        covered[p.begin] = true;
        ++k;
        continue;
      }
      std::vector<std::string> tokens;
      while (k < prov.size() && !prov[k].kept && prov[k].begin == p.begin &&
             prov[k].end == p.end) {
        tokens.push_back(fin.texts[k]);
        ++k;
      }
      for (std::size_t i = p.begin; i < p.end; ++i) covered[i] = true;
      if (p.begin == p.end) {
        out.Add(name, Edit::Insert(p.begin, std::move(tokens)));
      } else {
        out.Add(name, Edit::Replace(p.begin, p.end, std::move(tokens)));
      }
    }
    // Deletions are cut at insertion points so no insert lands inside one.
    std::set<std::size_t> insert_points;
    for (const AlignedToken& p : prov) {
      if (!p.kept && p.begin == p.end) insert_points.insert(p.begin);
    }
    std::size_t i = 0;
    while (i < n0) {
      if (covered[i]) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < n0 && !covered[j] && !insert_points.count(j)) ++j;
      out.Add(name, Edit::Delete(i, j));
      i = j;
    }
    auto& list = out.edits[name];
    list = NormalizeEdits(n0, list);
  }
  return out;
}

}  // namespace flint
