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

// Transformations tied to one task: entity edits for NER, morphology for POS,
// sentiment rewrites for SA and ABSA, and pair rewrites for NLI.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flint/error.h"
#include "flint/transform.h"
#include "transform_util.h"

namespace flint::internal {
namespace {

bool IsTerminal(std::string_view t) { return t == "." || t == "!" || t == "?"; }

bool IsNegation(const Resources& r, const std::string& lower) {
  if (lower.size() > 3 && lower.ends_with("n't")) return true;
  return std::find(r.negation_words.begin(), r.negation_words.end(), lower) !=
         r.negation_words.end();
}

std::vector<std::string> Words(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(text)) out.push_back(t.text);
  return out;
}

// --- NER --------------------------------------------------------------------

// Base for transformations that edit entity mentions of NER samples.
class EntityTransform : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling;
  }

 protected:
  NameSites Names(const Sample& sample) const {
    NameSites sites = CollectNames(sample, resources().gazetteer);
    if (sites.names.empty()) throw NotApplicable(name() + ": no entity");
    return sites;
  }

  std::vector<std::size_t> PickNames(const NameSites& sites,
                                     const std::vector<std::size_t>& usable,
                                     Rng& rng) const {
    return PickSites(usable, sites.names.size(), params().word_ratio, rng);
  }

  static void ReplaceAll(const NameSites& sites, const std::string& name,
                         const std::vector<std::string>& tokens, Variant& v) {
    for (const Mention& m : sites.mentions.at(name)) {
      v.trace.Add(m.field, Edit::Replace(m.start, m.end, tokens));
    }
  }
};

class EntTypos : public EntityTransform {
 public:
  using EntityTransform::EntityTransform;

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const NameSites sites = Names(sample);
    std::vector<std::size_t> usable;
    for (std::size_t j = 0; j < sites.names.size(); ++j) {
      for (const std::string& part : SplitWhitespace(sites.names[j])) {
        if (part.size() >= 3 && IsAlphaWord(part)) {
          usable.push_back(j);
          break;
        }
      }
    }
    Variant v;
    for (std::size_t j : PickNames(sites, usable, rng)) {
      std::vector<std::string> parts = SplitWhitespace(sites.names[j]);
      std::vector<std::size_t> inner;
      for (std::size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].size() >= 3 && IsAlphaWord(parts[p])) inner.push_back(p);
      }
      const std::size_t p = rng.Choice(inner);
      parts[p] = InnerTypo(parts[p], rng, params().max_edits_per_word >= 2);
      ReplaceAll(sites, sites.names[j], parts, v);
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no entity of 3+ letters");
    return v;
  }
};

class SwapLonger : public EntityTransform {
 public:
  using EntityTransform::EntityTransform;

 protected:
  Variant Perturb(const Sample& sample, Rng&) const override {
    const NameSites sites = Names(sample);
    Variant v;
    for (const std::string& n : sites.names) {
      if (const auto* full = resources().acronyms.Find(n)) {
        ReplaceAll(sites, n, *full, v);
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no acronym entity");
    return v;
  }
};

class Oov : public EntityTransform {
 public:
  using EntityTransform::EntityTransform;

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const NameSites sites = Names(sample);
    std::vector<std::size_t> all(sites.names.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    Variant v;
    for (std::size_t j : PickNames(sites, all, rng)) {
      const std::string& n = sites.names[j];
      std::vector<const GazetteerEntry*> pool;
      for (const GazetteerEntry* e :
           resources().gazetteer.InCategory(sites.category.at(n), true)) {
        if (!SampleMentions(sample, e->name)) pool.push_back(e);
      }
      std::vector<std::string> parts = SplitWhitespace(n);
      std::vector<std::pair<std::size_t, std::size_t>> flips;
      for (std::size_t p = 0; p < parts.size(); ++p) {
        for (std::size_t c = 1; c < parts[p].size(); ++c) {
          if (std::isalpha(static_cast<unsigned char>(parts[p][c]))) {
            flips.push_back({p, c});
          }
        }
      }
      if (!flips.empty() && (pool.empty() || rng.Bernoulli(0.5))) {
        const auto [p, c] = rng.Choice(flips);
        const unsigned char ch = static_cast<unsigned char>(parts[p][c]);
        parts[p][c] = static_cast<char>(std::isupper(ch) ? std::tolower(ch)
                                                         : std::toupper(ch));
        ReplaceAll(sites, n, parts, v);
      } else if (!pool.empty()) {
        ReplaceAll(sites, n, rng.Choice(pool)->tokens, v);
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no replaceable entity");
    return v;
  }
};

class CrossCategory : public EntityTransform {
 public:
  CrossCategory(std::string name, TransformOptions options)
      : EntityTransform(std::move(name), std::move(options)) {
    if (resources().gazetteer.categories().size() < 2) {
      throw ConfigError("CrossCategory needs a gazetteer with 2+ categories");
    }
  }
  std::string label_key() const override { return "tags"; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const Gazetteer& gaz = resources().gazetteer;
    const NameSites sites = Names(sample);
    std::vector<std::size_t> all(sites.names.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    Variant v;
    for (std::size_t j : PickNames(sites, all, rng)) {
      const std::string& n = sites.names[j];
      std::vector<const GazetteerEntry*> pool;
      for (const GazetteerEntry& e : gaz.main()) {
        if (e.category != sites.category.at(n) && !SampleMentions(sample, e.name)) {
          pool.push_back(&e);
        }
      }
      if (!pool.empty()) ReplaceAll(sites, n, rng.Choice(pool)->tokens, v);
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no replaceable entity");
    v.trace.Relabel("surface-category mismatch");
    return v;
  }
};

class ConcatSent : public Transform {
 public:
  ConcatSent(std::string name, TransformOptions options)
      : Transform(std::move(name), std::move(options)) {
    const auto k = this->options().extra.value("k", 2);
    if (k < 2 || k > 4) throw ConfigError("ConcatSent k must be in [2, 4]");
    k_ = static_cast<std::size_t>(k);
  }
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling;
  }
  TransformKind kind() const override { return TransformKind::kWindow; }
  std::size_t window() const override { return k_; }

  TransformOutput ApplyWindow(std::span<const Sample> samples,
                              std::uint64_t) const override {
    if (samples.size() != k_) {
      throw ConfigError("ConcatSent window needs " + std::to_string(k_) +
                        " samples, got " + std::to_string(samples.size()));
    }
    const Sample& first = samples[0];
    std::vector<std::string> tokens, tags;
    std::set<std::size_t> frozen = first.field("text").frozen();
    std::string id = first.id;
    for (std::size_t s = 1; s < samples.size(); ++s) {
      const Sample& next = samples[s];
      if (next.task != Task::kSequenceLabeling) {
        throw TaskError("ConcatSent mixes tasks in one window");
      }
      const std::size_t offset = first.field("text").size() + tokens.size();
      for (std::size_t i : next.field("text").frozen()) frozen.insert(offset + i);
      const auto texts = next.field("text").texts();
      tokens.insert(tokens.end(), texts.begin(), texts.end());
      tags.insert(tags.end(), next.tags.begin(), next.tags.end());
      id += "+" + next.id;
    }
    EditTrace trace;
    trace.Add("text", Edit::Insert(first.field("text").size(), tokens, tags));
    Sample out = RemapLabels(first, trace);
    out.fields["text"].set_frozen(std::move(frozen));
    out.id = id + "::" + name();
    out.Validate();
    TransformOutput result;
    result.original_id = first.id;
    result.transformed = std::move(out);
    result.trace = std::move(trace);
    result.transform = name();
    result.params = Describe();
    return result;
  }

 protected:
  Variant Perturb(const Sample&, Rng&) const override {
    throw ConfigError(name() + " transforms windows, not single samples");
  }

 private:
  std::size_t k_ = 2;
};

// --- POS --------------------------------------------------------------------

class SwapPrefix : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling;
  }

 protected:
  // Prefix swaps of `word` that land in the word list.
  std::vector<std::string> Options(const std::string& word) const {
    const PrefixTable& table = resources().prefixes;
    const std::string lower = ToLower(word);
    std::vector<std::string> out;
    for (const std::string& from : table.swappable) {
      if (!lower.starts_with(from) || lower.size() < from.size() + 3) continue;
      const std::string stem = lower.substr(from.size());
      for (const std::string& to : table.swappable) {
        if (to == from || table.excluded.count(to)) continue;
        const std::string candidate = to + stem;
        if (table.words.count(candidate) &&
            std::find(out.begin(), out.end(), candidate) == out.end()) {
          out.push_back(candidate);
        }
      }
    }
    return out;
  }

  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const TextField& f = sample.field("text");
    const SiteGuard guard(sample, "text");
    std::size_t eligible = 0;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!IsEligibleWord(f, i, params())) continue;
      ++eligible;
      if (!Options(f.token(i)).empty() && guard.CanReplace(i, i + 1)) {
        candidates.push_back(i);
      }
    }
    Variant v;
    for (std::size_t i : PickSites(candidates, eligible, params().word_ratio, rng)) {
      const std::string& w = f.token(i);
      v.trace.Add("text",
                  Edit::Replace(i, i + 1, {MatchCase(w, rng.Choice(Options(w)))}));
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no swappable prefix");
    return v;
  }
};

class SwapMultiPos : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling;
  }

 protected:
  std::vector<std::string> Options(const std::string& word,
                                   const std::string& tag) const {
    static const char* kOpen[] = {"NN", "VB", "JJ", "RB"};
    if (std::none_of(std::begin(kOpen), std::end(kOpen),
                     [&](const char* p) { return tag.starts_with(p); })) {
      return {};
    }
    std::vector<std::string> out;
    for (const auto& [w, tags] : resources().multi_pos.entries()) {
      if (w != ToLower(word) &&
          std::find(tags.begin(), tags.end(), tag) != tags.end()) {
        out.push_back(w);
      }
    }
    return out;
  }

  Variant Perturb(const Sample& sample, Rng& rng) const override {
    if (!IsPosTagged(sample)) throw NotApplicable(name() + ": sample has no POS tags");
    const TextField& f = sample.field("text");
    std::size_t eligible = 0;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!IsEligibleWord(f, i, params())) continue;
      ++eligible;
      if (!Options(f.token(i), sample.tags[i]).empty()) candidates.push_back(i);
    }
    Variant v;
    for (std::size_t i : PickSites(candidates, eligible, params().word_ratio, rng)) {
      const std::string pick = rng.Choice(Options(f.token(i), sample.tags[i]));
      v.trace.Add("text", Edit::Replace(i, i + 1, {MatchCase(f.token(i), pick)}));
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no open-class word");
    return v;
  }
};

// --- SA ---------------------------------------------------------------------

class DoubleDenial : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    static const std::set<std::string> kAux = {
        "am",  "is",   "are",  "was",    "were",  "be",    "been", "'s",
        "'re", "'m",   "has",  "have",   "had",   "will",  "would", "can",
        "could", "should", "must", "may", "might", "do", "does", "did"};
    const TextField& f = sample.field("text");
    const SiteGuard guard(sample, "text");
    std::vector<std::string> lower;
    for (const std::string& t : f.texts()) lower.push_back(ToLower(t));
    std::vector<Edit> sites;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const SentimentEntry* hit = resources().sentiment.Find(lower[i]);
      // Sentence-initial words have no host for the negation.
      if (hit == nullptr || i == 0 || !guard.CanReplace(i, i + 1)) continue;
      const std::string& prev = lower[i - 1];
      if (IsNegation(resources(), prev)) continue;
      const std::string& reversal = hit->reversal;
      if (kAux.count(prev)) {
        sites.push_back(Edit::Replace(i, i + 1, {"not", reversal}));
        continue;
      }
      // Finite verb: do-support with the reversal's base form.
      std::string aux;
      for (const auto& [verb, form] : resources().verbs.Lookup(lower[i])) {
        if (form == VerbForm::kThird) aux = "doesn't";
        if (form == VerbForm::kPast && aux.empty()) aux = "didn't";
        if (form == VerbForm::kBase && aux.empty()) aux = "don't";
      }
      const auto reversed = resources().verbs.Lookup(reversal);
      if (!aux.empty() && !reversed.empty()) {
        sites.push_back(Edit::Replace(
            i, i + 1, {MatchCase(f.token(i), aux), reversed.front().first->base}));
      } else if (aux.empty()) {
        sites.push_back(Edit::Replace(i, i + 1, {MatchCase(f.token(i), "not"),
                                                 reversal}));
      }
    }
    if (sites.empty()) throw NotApplicable(name() + ": no sentiment word");
    Variant v;
    v.trace.Add("text", rng.Choice(sites));
    return v;
  }
};

// Names of a summary vocabulary ("person", "movie").
const std::map<std::string, std::string>& Vocab(const Resources& r,
                                                const std::string& kind) {
  auto it = r.summaries.find(kind);
  if (it == r.summaries.end() || it->second.empty()) {
    throw ConfigError("no " + kind + " vocabulary in the summary resource");
  }
  return it->second;
}

NameSites VocabMentions(const Sample& sample,
                        const std::map<std::string, std::string>& vocab) {
  std::vector<std::string> names;
  for (const auto& [n, _] : vocab) names.push_back(n);
  return GroupMentions(sample, FindNames(sample.field("text").texts(), names, "text"));
}

class AddSum : public Transform {
 public:
  AddSum(std::string name, TransformOptions options, std::string kind)
      : Transform(std::move(name), std::move(options)), kind_(std::move(kind)) {
    Vocab(resources(), kind_);
  }
  bool Supports(Task task) const override {
    return task == Task::kClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& vocab = Vocab(resources(), kind_);
    const NameSites sites = VocabMentions(sample, vocab);
    if (sites.names.empty()) throw NotApplicable(name() + ": no " + kind_ + " mention");
    const std::string& pick = rng.Choice(sites.names);
    const TextField& f = sample.field("text");
    std::size_t at = sites.mentions.at(pick).front().end;
    while (at < f.size() && !IsTerminal(f.token(at))) ++at;
    std::vector<std::string> tokens;
    if (at == f.size()) {
      if (!IsTerminal(f.token(f.size() - 1))) tokens.push_back(".");
    } else {
      ++at;
    }
    for (std::string& w : Words(vocab.at(pick))) tokens.push_back(std::move(w));
    Variant v;
    v.trace.Add("text", Edit::Insert(at, tokens));
    return v;
  }

 private:
  std::string kind_;
};

class SwapSpecialEnt : public Transform {
 public:
  SwapSpecialEnt(std::string name, TransformOptions options, std::string kind)
      : Transform(std::move(name), std::move(options)), kind_(std::move(kind)) {
    Vocab(resources(), kind_);
  }
  bool Supports(Task task) const override {
    return task == Task::kClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& vocab = Vocab(resources(), kind_);
    const NameSites sites = VocabMentions(sample, vocab);
    if (sites.names.empty()) throw NotApplicable(name() + ": no " + kind_ + " mention");
    const std::string& from = rng.Choice(sites.names);
    std::vector<std::string> pool;
    for (const auto& [n, _] : vocab) {
      if (!SampleMentions(sample, n)) pool.push_back(n);
    }
    if (pool.empty()) throw NotApplicable(name() + ": vocabulary exhausted");
    const std::vector<std::string> to = SplitWhitespace(rng.Choice(pool));
    Variant v;
    for (const Mention& m : sites.mentions.at(from)) {
      v.trace.Add("text", Edit::Replace(m.start, m.end, to));
    }
    return v;
  }

 private:
  std::string kind_;
};

// --- ABSA -------------------------------------------------------------------

bool IsClauseBoundary(const std::string& lower) {
  return lower == "." || lower == "," || lower == ";" || lower == "and" ||
         lower == "but";
}

// Maximal run of non-boundary tokens around [start, end).
Range ClauseOf(const std::vector<std::string>& lower, std::size_t start,
               std::size_t end) {
  Range r{start, end};
  while (r.start > 0 && !IsClauseBoundary(lower[r.start - 1])) --r.start;
  while (r.end < lower.size() && !IsClauseBoundary(lower[r.end])) ++r.end;
  return r;
}

std::string Flipped(const std::string& polarity) {
  if (polarity == "positive") return "negative";
  if (polarity == "negative") return "positive";
  return "";
}

class ReverseSentiment : public Transform {
 public:
  ReverseSentiment(std::string name, TransformOptions options, bool target)
      : Transform(std::move(name), std::move(options)), target_(target) {}
  bool Supports(Task task) const override {
    return task == Task::kAspectSentiment;
  }
  std::string label_key() const override { return "aspects"; }

 protected:
  Variant Perturb(const Sample& sample, Rng&) const override {
    const TextField& f = sample.field("text");
    std::vector<std::string> lower;
    for (const std::string& t : f.texts()) lower.push_back(ToLower(t));
    const std::size_t target = sample.target;
    const Aspect& tgt = sample.aspects.at(target);
    const Range tgt_clause = ClauseOf(lower, tgt.start, tgt.end);

    Variant v;
    std::set<std::size_t> conjunctions;
    if (target_) {
      if (Flipped(tgt.polarity).empty()) {
        throw NotApplicable(name() + ": target polarity is " + tgt.polarity);
      }
      for (std::size_t a = 0; a < sample.aspects.size(); ++a) {
        const Aspect& other = sample.aspects[a];
        if (a != target && other.start >= tgt_clause.start &&
            other.end <= tgt_clause.end) {
          throw NotApplicable(name() + ": another aspect shares the target clause");
        }
      }
      if (!Reverse(sample, lower, tgt_clause, v)) {
        throw NotApplicable(name() + ": no opinion word near the target");
      }
      v.aspect_polarity[target] = Flipped(tgt.polarity);
      conjunctions.insert(Conjunction(lower, tgt_clause));
      v.trace.Relabel("target aspect polarity reversed");
    } else {
      if (sample.aspects.size() < 2) {
        throw NotApplicable(name() + ": single-aspect sentence");
      }
      std::vector<Range> done;
      for (std::size_t a = 0; a < sample.aspects.size(); ++a) {
        const Aspect& other = sample.aspects[a];
        const Range clause = ClauseOf(lower, other.start, other.end);
        if (a == target || clause.start == tgt_clause.start) continue;
        const bool seen = std::any_of(done.begin(), done.end(), [&](Range r) {
          return r.start == clause.start;
        });
        if (!seen) {
          if (!Reverse(sample, lower, clause, v)) continue;
          done.push_back(clause);
          conjunctions.insert(Conjunction(lower, clause));
        }
        if (!Flipped(other.polarity).empty()) {
          v.aspect_polarity[a] = Flipped(other.polarity);
        }
      }
      if (done.empty()) throw NotApplicable(name() + ": no opinion word off target");
      if (!v.aspect_polarity.empty()) {
        v.trace.Relabel("non-target aspect polarities reversed");
      }
    }
    for (std::size_t c : conjunctions) {
      if (c == kNone) continue;
      v.trace.Add("text", Edit::Replace(c, c + 1, {MatchCase(
                                                     f.token(c),
                                                     lower[c] == "and" ? "but" : "and")}));
    }
    return v;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Replaces the opinion words of `clause`; false when there are none.
  bool Reverse(const Sample& sample, const std::vector<std::string>& lower,
               Range clause, Variant& v) const {
    const TextField& f = sample.field("text");
    bool any = false;
    for (std::size_t i = clause.start; i < clause.end; ++i) {
      const bool in_aspect = std::any_of(
          sample.aspects.begin(), sample.aspects.end(),
          [&](const Aspect& a) { return i >= a.start && i < a.end; });
      if (in_aspect) continue;
      const SentimentEntry* hit = resources().sentiment.Find(lower[i]);
      if (hit == nullptr) continue;
      if (i > clause.start && IsNegation(resources(), lower[i - 1])) continue;
      v.trace.Add("text", Edit::Replace(i, i + 1, {MatchCase(f.token(i), hit->reversal)}));
      any = true;
    }
    return any;
  }

  // The conjunction joining `clause` to the next clause, else to the
  // previous one.
  static std::size_t Conjunction(const std::vector<std::string>& lower,
                                 Range clause) {
    for (std::size_t i = clause.end;
         i < lower.size() && IsClauseBoundary(lower[i]); ++i) {
      if (lower[i] == "and" || lower[i] == "but") return i;
    }
    for (std::size_t i = clause.start; i > 0 && IsClauseBoundary(lower[i - 1]);
         --i) {
      if (lower[i - 1] == "and" || lower[i - 1] == "but") return i - 1;
    }
    return kNone;
  }

  bool target_;
};

class AddDiff : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kAspectSentiment;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& snippets = resources().aspect_snippets;
    if (snippets.empty()) throw ConfigError("aspect snippet resource is empty");
    const TextField& f = sample.field("text");
    std::set<std::string> present;
    for (const std::string& t : f.texts()) present.insert(ToLower(t));
    for (const Aspect& a : sample.aspects) present.insert(ToLower(a.term));
    const std::string& polarity = sample.aspects.at(sample.target).polarity;
    std::vector<const AspectSnippet*> pool;
    for (const AspectSnippet& s : snippets) {
      if (s.polarity != polarity && !present.count(ToLower(s.aspect))) {
        pool.push_back(&s);
      }
    }
    if (pool.empty()) throw NotApplicable(name() + ": every snippet aspect is present");
    std::size_t at = f.size();
    while (at > 0 && IsTerminal(f.token(at - 1))) --at;
    std::vector<std::string> tokens = {",", "but"};
    const AspectSnippet* pick = rng.Choice(pool);
    tokens.insert(tokens.end(), pick->tokens.begin(), pick->tokens.end());
    Variant v;
    v.trace.Add("text", Edit::Insert(at, tokens));
    return v;
  }
};

// --- NLI --------------------------------------------------------------------

class PairTransform : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kPairClassification;
  }
};

// Entailment pairs turned into contradictions by one hypothesis edit.
class Contradict : public PairTransform {
 public:
  Contradict(std::string name, TransformOptions options, bool numeral)
      : PairTransform(std::move(name), std::move(options)), numeral_(numeral) {}
  std::string label_key() const override { return "label"; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    if (sample.label != "entailment") {
      throw NotApplicable(name() + ": label is " + sample.label);
    }
    const TextField& h = sample.field("hypothesis");
    const SiteGuard guard(sample, "hypothesis");
    std::set<std::string> premise;
    for (const std::string& t : sample.field("premise").texts()) {
      premise.insert(numeral_ ? t : ToLower(t));
    }
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const std::string& t = h.token(i);
      if (!guard.CanReplace(i, i + 1)) continue;
      if (numeral_ ? (IsNumeral(t) && premise.count(t))
                   : (premise.count(ToLower(t)) &&
                      resources().antonyms.Find(ToLower(t)) != nullptr)) {
        sites.push_back(i);
      }
    }
    if (sites.empty()) {
      throw NotApplicable(name() + (numeral_ ? ": no shared numeral"
                                             : ": no shared word with an antonym"));
    }
    const std::size_t i = rng.Choice(sites);
    const std::string& t = h.token(i);
    const std::string out =
        numeral_ ? RandomNumeral(t.size(), t, rng)
                 : MatchCase(t, rng.Choice(*resources().antonyms.Find(ToLower(t))));
    Variant v;
    v.trace.Add("hypothesis", Edit::Replace(i, i + 1, {out}));
    v.trace.Relabel("entailment to contradiction");
    v.label = "contradiction";
    return v;
  }

 private:
  bool numeral_;
};

class AddSent : public PairTransform {
 public:
  using PairTransform::PairTransform;

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& corpus = resources().irrelevant_sentences;
    if (corpus.empty()) throw ConfigError("irrelevant-sentence corpus is empty");
    std::vector<std::string> hyp;
    for (const std::string& t : sample.field("hypothesis").texts()) {
      hyp.push_back(ToLower(t));
    }
    std::vector<std::vector<std::string>> pool;
    for (const std::string& s : corpus) {
      std::vector<std::string> words = Words(s);
      std::vector<std::string> lower;
      for (const std::string& w : words) lower.push_back(ToLower(w));
      if (lower != hyp) pool.push_back(std::move(words));
    }
    if (pool.empty()) throw NotApplicable(name() + ": corpus only repeats the hypothesis");
    const TextField& premise = sample.field("premise");
    std::vector<std::string> tokens;
    if (!premise.empty() && !IsTerminal(premise.token(premise.size() - 1))) {
      tokens.push_back(".");
    }
    const auto& pick = rng.Choice(pool);
    tokens.insert(tokens.end(), pick.begin(), pick.end());
    Variant v;
    v.trace.Add("premise", Edit::Insert(premise.size(), std::move(tokens)));
    return v;
  }
};

class Overlap : public PairTransform {
 public:
  using PairTransform::PairTransform;
  TransformKind kind() const override { return TransformKind::kGenerative; }

  std::vector<TransformOutput> Generate(Task task, std::size_t count,
                                        std::uint64_t seed) const override {
    if (!Supports(task)) {
      throw TaskError(name() + " generates pair-classification samples only");
    }
    const OverlapVocab& vocab = resources().overlap;
    if (vocab.nouns.size() < 3 || vocab.clause_verbs.empty() ||
        vocab.transitive_verbs.empty() || vocab.intransitive_verbs.empty() ||
        vocab.prepositions.empty()) {
      throw ConfigError("overlap vocabulary is incomplete");
    }
    Rng rng(seed);
    std::vector<TransformOutput> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t attempt = 0; out.size() < count && attempt < count * 50 + 100;
         ++attempt) {
      const std::vector<std::size_t> n = rng.Sample(vocab.nouns.size(), 3);
      std::string premise, hypothesis;
      if (rng.Bernoulli(0.5)) {
        // Clause truncation: the embedded subject is not the matrix object.
        const std::string head = "The " + vocab.nouns[n[0]] + " " +
                                 rng.Choice(vocab.clause_verbs) + " the " +
                                 vocab.nouns[n[1]];
        premise = head + " " + rng.Choice(vocab.intransitive_verbs);
        hypothesis = head;
      } else {
        // Subsequence: the prepositional object is not the verb's subject.
        const std::string tail = vocab.nouns[n[1]] + " " +
                                 rng.Choice(vocab.transitive_verbs) + " the " +
                                 vocab.nouns[n[2]];
        premise = "The " + vocab.nouns[n[0]] + " " +
                  rng.Choice(vocab.prepositions) + " the " + tail;
        hypothesis = "The " + tail;
      }
      if (!seen.insert({premise, hypothesis}).second) continue;
      Sample s;
      s.id = "overlap-" + std::to_string(out.size());
      s.task = Task::kPairClassification;
      s.fields["premise"] = TextField::FromRaw(premise);
      s.fields["hypothesis"] = TextField::FromRaw(hypothesis);
      s.label = "neutral";
      s.meta["hans_label"] = "non-entailment";
      s.Validate();
      TransformOutput o;
      o.transformed = std::move(s);
      o.transform = name();
      o.params = Describe();
      out.push_back(std::move(o));
    }
    if (out.size() < count) {
      throw ConfigError("overlap vocabulary yields only " +
                        std::to_string(out.size()) + " distinct pairs");
    }
    return out;
  }

 protected:
  Variant Perturb(const Sample&, Rng&) const override {
    throw ConfigError(name() + " generates samples and takes no input");
  }
};

}  // namespace

const std::vector<std::string>& TaskTransformNames() {
  static const std::vector<std::string> kNames = {
      "EntTypos",         "SwapLonger",         "OOV",
      "CrossCategory",    "ConcatSent",         "SwapPrefix",
      "SwapMultiPOS",     "DoubleDenial",       "AddSum:person",
      "AddSum:movie",     "SwapSpecialEnt:person", "SwapSpecialEnt:movie",
      "RevTgt",           "RevNon",             "AddDiff",
      "SwapAnt-NLI",      "Overlap",            "AddSent",
      "NumWord"};
  return kNames;
}

std::unique_ptr<Transform> MakeTaskTransform(const std::string& name,
                                             const TransformOptions& o) {
  if (name == "EntTypos") return std::make_unique<EntTypos>(name, o);
  if (name == "SwapLonger") return std::make_unique<SwapLonger>(name, o);
  if (name == "OOV") return std::make_unique<Oov>(name, o);
  if (name == "CrossCategory") return std::make_unique<CrossCategory>(name, o);
  if (name == "ConcatSent") return std::make_unique<ConcatSent>(name, o);
  if (name == "SwapPrefix") return std::make_unique<SwapPrefix>(name, o);
  if (name == "SwapMultiPOS") return std::make_unique<SwapMultiPos>(name, o);
  if (name == "DoubleDenial") return std::make_unique<DoubleDenial>(name, o);
  if (name == "AddSum:person" || name == "AddSum:movie") {
    return std::make_unique<AddSum>(name, o, name.substr(7));
  }
  if (name == "SwapSpecialEnt:person" || name == "SwapSpecialEnt:movie") {
    return std::make_unique<SwapSpecialEnt>(name, o, name.substr(15));
  }
  if (name == "RevTgt") return std::make_unique<ReverseSentiment>(name, o, true);
  if (name == "RevNon") return std::make_unique<ReverseSentiment>(name, o, false);
  if (name == "AddDiff") return std::make_unique<AddDiff>(name, o);
  if (name == "SwapAnt-NLI") return std::make_unique<Contradict>(name, o, false);
  if (name == "NumWord") return std::make_unique<Contradict>(name, o, true);
  if (name == "Overlap") return std::make_unique<Overlap>(name, o);
  if (name == "AddSent") return std::make_unique<AddSent>(name, o);
  return nullptr;
}

}  // namespace flint::internal
