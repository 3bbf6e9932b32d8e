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

#include "transform_util.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace flint::internal {

namespace {

bool In(std::string_view w, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

char RandomLetter(Rng& rng, bool upper) {
  const char c = static_cast<char>('a' + rng.Uniform(26));
  return upper ? static_cast<char>(std::toupper(c)) : c;
}

}  // namespace

// --- SiteGuard ---

SiteGuard::SiteGuard(const Sample& sample, const std::string& field)
    : field_(sample.field(field)) {
  if (field != "text") return;
  if (sample.task == Task::kSequenceLabeling && IsBioScheme(sample.tags)) {
    for (const SpanLabel& s : BioToSpans(field, sample.tags)) {
      spans_.push_back({s.start, s.end});
    }
  } else if (sample.task == Task::kAspectSentiment) {
    for (const Aspect& a : sample.aspects) spans_.push_back({a.start, a.end});
  }
}

bool SiteGuard::Frozen(std::size_t start, std::size_t end) const {
  for (std::size_t i = start; i < end; ++i) {
    if (field_.is_frozen(i)) return true;
  }
  return false;
}

bool SiteGuard::CanReplace(std::size_t start, std::size_t end) const {
  if (start >= end || end > field_.size() || Frozen(start, end)) return false;
  for (const Range& s : spans_) {
    const bool disjoint = end <= s.start || start >= s.end;
    const bool inside = start >= s.start && end <= s.end;
    if (!disjoint && !inside) return false;
  }
  return true;
}

bool SiteGuard::CanInsert(std::size_t pos) const {
  if (pos > field_.size()) return false;
  for (const Range& s : spans_) {
    if (pos > s.start && pos < s.end) return false;
  }
  return true;
}

bool SiteGuard::CanDelete(std::size_t start, std::size_t end) const {
  if (start >= end || end > field_.size() || Frozen(start, end)) return false;
  for (const Range& s : spans_) {
    if (!(end <= s.start || start >= s.end)) return false;
  }
  return true;
}

// --- Word selection ---

bool IsEligibleWord(const TextField& field, std::size_t i,
                    const PerturbParams& params) {
  const std::string& w = field.token(i);
  return IsAlphaWord(w) && w.size() >= params.min_word_len &&
         !field.is_frozen(i);
}

std::size_t PerturbCount(std::size_t eligible, double ratio) {
  const auto k = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(eligible) + 1e-9));
  return std::max<std::size_t>(1, k);
}

std::vector<std::size_t> PickSites(const std::vector<std::size_t>& candidates,
                                   std::size_t eligible, double ratio,
                                   Rng& rng) {
  if (candidates.empty()) return {};
  const std::size_t k =
      std::min(candidates.size(), PerturbCount(std::max(eligible, std::size_t{1}), ratio));
  std::vector<std::size_t> out;
  for (std::size_t j : rng.Sample(candidates.size(), k)) {
    out.push_back(candidates[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> TextFields(const Sample& sample) {
  return TaskFields(sample.task);
}

bool IsPosTagged(const Sample& sample) {
  return sample.task == Task::kSequenceLabeling && !sample.tags.empty() &&
         !IsBioScheme(sample.tags);
}

// --- Mentions ---

std::vector<Mention> FindMentions(const Sample& sample, const std::string& field,
                                  const Gazetteer& gazetteer) {
  const TextField& f = sample.field(field);
  std::vector<Mention> out;
  auto join = [&](std::size_t s, std::size_t e) {
    std::string text;
    for (std::size_t i = s; i < e; ++i) {
      if (i > s) text += ' ';
      text += f.token(i);
    }
    return text;
  };
  if (sample.task == Task::kSequenceLabeling && IsBioScheme(sample.tags)) {
    for (const SpanLabel& s : BioToSpans(field, sample.tags)) {
      out.push_back({field, s.start, s.end, s.tag, join(s.start, s.end)});
    }
    return out;
  }
  const std::vector<std::string> texts = f.texts();
  std::size_t i = 0;
  while (i < texts.size()) {
    const GazetteerEntry* entry = nullptr;
    const std::size_t len = gazetteer.LongestMatch(texts, i, &entry);
    if (len == 0) {
      ++i;
      continue;
    }
    out.push_back({field, i, i + len, entry->category, entry->name});
    i += len;
  }
  return out;
}

std::vector<Mention> FindNames(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& names,
                               const std::string& field) {
  std::vector<std::vector<std::string>> split;
  for (const std::string& n : names) split.push_back(SplitWhitespace(n));
  std::vector<std::size_t> order(names.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return split[a].size() > split[b].size();
  });
  std::vector<Mention> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool hit = false;
    for (std::size_t j : order) {
      const auto& parts = split[j];
      if (parts.empty() || i + parts.size() > tokens.size()) continue;
      if (std::equal(parts.begin(), parts.end(), tokens.begin() + i)) {
        out.push_back({field, i, i + parts.size(), "", names[j]});
        i += parts.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  return out;
}

// --- Character edits ---

NameSites GroupMentions(const Sample& sample, const std::vector<Mention>& all) {
  NameSites out;
  std::map<std::string, SiteGuard> guards;
  for (const Mention& m : all) {
    auto it = guards.find(m.field);
    if (it == guards.end()) it = guards.emplace(m.field, SiteGuard(sample, m.field)).first;
    if (!it->second.CanReplace(m.start, m.end)) continue;
    if (!out.mentions.count(m.text)) {
      out.names.push_back(m.text);
      out.category[m.text] = m.category;
    }
    out.mentions[m.text].push_back(m);
  }
  return out;
}

NameSites CollectNames(const Sample& sample, const Gazetteer& gazetteer) {
  std::vector<Mention> all;
  for (const std::string& field : TextFields(sample)) {
    for (Mention& m : FindMentions(sample, field, gazetteer)) all.push_back(std::move(m));
  }
  return GroupMentions(sample, all);
}

bool SampleMentions(const Sample& sample, const std::string& name) {
  const std::vector<std::string> parts = SplitWhitespace(name);
  for (const auto& [_, field] : sample.fields) {
    const std::vector<std::string> t = field.texts();
    if (std::search(t.begin(), t.end(), parts.begin(), parts.end()) != t.end()) {
      return true;
    }
  }
  return false;
}

std::string InnerTypo(const std::string& word, Rng& rng, bool allow_swap) {
  const std::size_t n = word.size();
  enum Op { kInsert, kDelete, kReplace, kSwap };
  std::vector<Op> ops;
  if (n >= 2) ops.push_back(kInsert);
  if (n >= 3) {
    ops.push_back(kDelete);
    ops.push_back(kReplace);
  }
  if (allow_swap && n >= 4) {
    for (std::size_t i = 1; i + 2 < n; ++i) {
      if (word[i] != word[i + 1]) {
        ops.push_back(kSwap);
        break;
      }
    }
  }
  if (ops.empty()) return word;
  std::string out = word;
  switch (rng.Choice(ops)) {
    case kInsert: {
      const std::size_t pos = 1 + rng.Uniform(n - 1);
      const bool upper = std::isupper(static_cast<unsigned char>(word[pos - 1])) &&
                         std::isupper(static_cast<unsigned char>(word[pos % n]));
      out.insert(out.begin() + pos, RandomLetter(rng, upper));
      break;
    }
    case kDelete:
      out.erase(1 + rng.Uniform(n - 2), 1);
      break;
    case kReplace: {
      const std::size_t pos = 1 + rng.Uniform(n - 2);
      const bool upper = std::isupper(static_cast<unsigned char>(word[pos])) != 0;
      char c = word[pos];
      while (std::tolower(static_cast<unsigned char>(c)) ==
             std::tolower(static_cast<unsigned char>(word[pos]))) {
        c = RandomLetter(rng, upper);
      }
      out[pos] = c;
      break;
    }
    case kSwap: {
      std::vector<std::size_t> sites;
      for (std::size_t i = 1; i + 2 < n; ++i) {
        if (word[i] != word[i + 1]) sites.push_back(i);
      }
      const std::size_t i = rng.Choice(sites);
      std::swap(out[i], out[i + 1]);
      break;
    }
  }
  return out;
}

std::string RandomNumeral(std::size_t digits, const std::string& avoid,
                          Rng& rng) {
  if (digits == 0) return avoid;
  for (;;) {
    std::string s;
    for (std::size_t i = 0; i < digits; ++i) {
      const bool lead = i == 0 && digits > 1;
      s += static_cast<char>(lead ? '1' + rng.Uniform(9) : '0' + rng.Uniform(10));
    }
    if (s != avoid) return s;
  }
}

bool IsDeterminer(std::string_view w) {
  return In(w, {"the", "a", "an", "this", "that", "these", "those", "my",
                "your", "his", "her", "its", "our", "their", "some", "any",
                "every", "each", "no", "one"});
}

std::vector<Edit> DiffEdits(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1,
                                            std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                               : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<Edit> edits;
  std::size_t i = 0;
  std::size_t j = 0;
  auto flush = [&](std::size_t i0, std::size_t j0) {
    if (i0 == i && j0 == j) return;
    std::vector<std::string> tokens(b.begin() + j0, b.begin() + j);
    if (i0 == i) {
      edits.push_back(Edit::Insert(i0, std::move(tokens)));
    } else if (j0 == j) {
      edits.push_back(Edit::Delete(i0, i));
    } else {
      edits.push_back(Edit::Replace(i0, i, std::move(tokens)));
    }
  };
  std::size_t i0 = 0;
  std::size_t j0 = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      flush(i0, j0);
      ++i;
      ++j;
      i0 = i;
      j0 = j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      ++j;
    } else {
      ++i;
    }
  }
  flush(i0, j0);
  return edits;
}

// --- Verb groups ---

namespace {

bool IsModal(std::string_view w) {
  return In(w, {"will", "would", "can", "could", "shall", "should", "may",
                "might", "must", "to"});
}

bool IsNegator(std::string_view w) {
  return w == "not" || w == "never" ||
         (w.size() > 3 && w.substr(w.size() - 3) == "n't");
}

bool IsPreposition(std::string_view w) {
  return In(w, {"in", "on", "at", "of", "for", "with", "from", "by", "about",
                "into", "over", "under", "after", "before", "as", "like",
                "than", "and", "or", "but"});
}

std::optional<Person> SubjectPerson(const std::vector<std::string>& lower,
                                    const std::vector<std::string>& raw,
                                    std::size_t start,
                                    const std::vector<std::string>& adverbs) {
  std::size_t k = start;
  while (k > 0 && std::find(adverbs.begin(), adverbs.end(), lower[k - 1]) !=
                      adverbs.end()) {
    --k;
  }
  if (k == 0) return std::nullopt;
  const std::string& w = lower[k - 1];
  if (w == "i") return Person::kFirst;
  if (In(w, {"you", "we", "they"})) return Person::kPlural;
  if (In(w, {"he", "she", "it", "who", "that", "which"})) return Person::kThird;
  if (IsCapitalized(raw[k - 1]) && IsAlphaWord(raw[k - 1])) return Person::kThird;
  return std::nullopt;
}

}  // namespace

std::vector<VerbGroup> FindVerbGroups(const TextField& field,
                                      const Resources& resources) {
  const std::vector<std::string> raw = field.texts();
  std::vector<std::string> lower;
  for (const std::string& t : raw) lower.push_back(ToLower(t));
  const VerbTable& verbs = resources.verbs;
  const VerbForms* be = verbs.FindLemma("be");
  const VerbForms* have = verbs.FindLemma("have");

  auto reading = [&](std::size_t i, VerbForm form) -> const VerbForms* {
    for (const auto& [v, f] : verbs.Lookup(lower[i])) {
      if (f == form && v->base != "be" && v->base != "do") return v;
    }
    return nullptr;
  };

  std::vector<VerbGroup> out;
  const std::size_t n = lower.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = lower[i];
    const std::string prev = i > 0 ? lower[i - 1] : "";
    if (IsModal(prev) || IsNegator(prev) || IsDeterminer(prev)) continue;
    const auto subject = SubjectPerson(lower, raw, i, resources.adverbs);

    VerbGroup g;
    g.start = i;
    if (be != nullptr && In(w, {"am", "is", "are", "was", "were"})) {
      g.person = w == "am" ? Person::kFirst
                 : (w == "are" || w == "were") ? Person::kPlural
                 : (w == "was" && subject == Person::kFirst) ? Person::kFirst
                                                             : Person::kThird;
      if (i + 1 < n && reading(i + 1, VerbForm::kGerund) != nullptr &&
          !(w == "was" || w == "were")) {
        g.verb = reading(i + 1, VerbForm::kGerund);
        g.tense = Tense::kProgressive;
        g.main = i + 1;
        g.end = i + 2;
      } else if (i + 1 < n && reading(i + 1, VerbForm::kGerund) != nullptr) {
        continue;  // past progressive is left alone
      } else {
        g.verb = be;
        g.tense = (w == "was" || w == "were") ? Tense::kPast : Tense::kPresent;
        g.main = i;
        g.end = i + 1;
      }
      out.push_back(g);
      i = g.end - 1;
      continue;
    }
    if (have != nullptr && In(w, {"has", "have", "had"})) {
      const VerbForms* part = nullptr;
      if (i + 1 < n) {
        for (const auto& [v, f] : verbs.Lookup(lower[i + 1])) {
          if (f == VerbForm::kParticiple && v->base != "do") part = v;
        }
      }
      if (part != nullptr) {
        if (w == "had") {
          ++i;  // past perfect is left alone
          continue;
        }
        g.verb = part;
        g.tense = Tense::kPerfect;
        g.person = w == "has" ? Person::kThird
                              : subject.value_or(Person::kPlural);
        g.main = i + 1;
        g.end = i + 2;
      } else {
        g.verb = have;
        g.tense = w == "had" ? Tense::kPast : Tense::kPresent;
        g.person = w == "has" ? Person::kThird
                              : subject.value_or(w == "had" ? Person::kThird
                                                            : Person::kPlural);
        g.main = i;
        g.end = i + 1;
      }
      out.push_back(g);
      i = g.end - 1;
      continue;
    }
    if (In(w, {"do", "does", "did"})) continue;
    if (IsPreposition(prev) || In(prev, {"am", "is", "are", "was", "were",
                                         "be", "been", "being", "has", "have",
                                         "had"})) {
      continue;
    }
    g.main = i;
    g.end = i + 1;
    if (const VerbForms* v = reading(i, VerbForm::kThird)) {
      g.verb = v;
      g.tense = Tense::kPresent;
      g.person = Person::kThird;
    } else if (const VerbForms* v = reading(i, VerbForm::kPast)) {
      if (reading(i, VerbForm::kBase) != nullptr) continue;  // "read", "put"
      g.verb = v;
      g.tense = Tense::kPast;
      g.person = subject.value_or(Person::kThird);
    } else if (const VerbForms* v = reading(i, VerbForm::kBase)) {
      // A bare base form is a verb only after a clear non-third subject.
      if (!subject || *subject == Person::kThird) continue;
      g.verb = v;
      g.tense = Tense::kPresent;
      g.person = *subject;
    } else {
      continue;
    }
    out.push_back(g);
  }
  return out;
}

Rendered RenderVerb(const VerbForms& verb, Tense tense, Person person) {
  const bool third = person == Person::kThird;
  const std::string present_tag = third ? "VBZ" : "VBP";
  auto be_present = [&] {
    return person == Person::kFirst ? "am" : third ? "is" : "are";
  };
  const bool is_be = verb.base == "be";
  switch (tense) {
    case Tense::kPresent:
      if (is_be) return {{be_present()}, {present_tag}};
      return {{third ? verb.third : verb.base}, {present_tag}};
    case Tense::kPast:
      if (is_be) return {{person == Person::kPlural ? "were" : "was"}, {"VBD"}};
      return {{verb.past}, {"VBD"}};
    case Tense::kProgressive:
      return {{be_present(), verb.gerund}, {present_tag, "VBG"}};
    case Tense::kPerfect:
      return {{third ? "has" : "have", verb.participle}, {present_tag, "VBN"}};
  }
  return {};
}

}  // namespace flint::internal
