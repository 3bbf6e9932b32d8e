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

// Transformations that apply to the text of any task.

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

// Fields an appending transformation extends: the hypothesis of a pair, the
// text otherwise.
std::vector<std::string> TailFields(const Sample& sample) {
  if (sample.task == Task::kPairClassification) return {"hypothesis"};
  return {"text"};
}

std::vector<std::string> Lowered(const TextField& f) {
  std::vector<std::string> out;
  for (const std::string& t : f.texts()) out.push_back(ToLower(t));
  return out;
}

bool IsTerminal(std::string_view t) {
  return t == "." || t == "!" || t == "?" || t == ";" || t == ":" || t == "...";
}

// --- Character-level noise ---------------------------------------------------

class WordNoise : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task) const override { return true; }

 protected:
  virtual bool Candidate(const std::string& word) const = 0;
  virtual std::string PerturbWord(const std::string& word, Rng& rng) const = 0;

  Variant Perturb(const Sample& sample, Rng& rng) const override {
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      std::size_t eligible = 0;
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!IsEligibleWord(f, i, params())) continue;
        ++eligible;
        if (Candidate(f.token(i)) && guard.CanReplace(i, i + 1)) {
          candidates.push_back(i);
        }
      }
      for (std::size_t i :
           PickSites(candidates, eligible, params().word_ratio, rng)) {
        const std::string out = PerturbWord(f.token(i), rng);
        if (out != f.token(i)) v.trace.Add(name, Edit::Replace(i, i + 1, {out}));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no eligible word");
    return v;
  }
};

class Keyboard : public WordNoise {
 public:
  using WordNoise::WordNoise;

 protected:
  bool Candidate(const std::string& w) const override {
    return std::any_of(w.begin(), w.end(), [&](char c) {
      return resources().keyboard.Find(static_cast<char>(
                 std::tolower(static_cast<unsigned char>(c)))) != nullptr;
    });
  }
  std::string PerturbWord(const std::string& w, Rng& rng) const override {
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (resources().keyboard.Find(static_cast<char>(
              std::tolower(static_cast<unsigned char>(w[i]))))) {
        sites.push_back(i);
      }
    }
    const std::size_t pos = rng.Choice(sites);
    const char lower =
        static_cast<char>(std::tolower(static_cast<unsigned char>(w[pos])));
    const std::set<char>& near = *resources().keyboard.Find(lower);
    const std::vector<char> options(near.begin(), near.end());
    char c = rng.Choice(options);
    if (std::isupper(static_cast<unsigned char>(w[pos]))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    std::string out = w;
    out[pos] = c;
    return out;
  }
};

class Ocr : public WordNoise {
 public:
  using WordNoise::WordNoise;

 protected:
  bool Candidate(const std::string& w) const override {
    return std::any_of(w.begin(), w.end(), [&](char c) {
      return resources().ocr.Find(std::string(1, c)) != nullptr;
    });
  }
  std::string PerturbWord(const std::string& w, Rng& rng) const override {
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (resources().ocr.Find(std::string(1, w[i]))) sites.push_back(i);
    }
    const std::size_t pos = rng.Choice(sites);
    const auto& options = *resources().ocr.Find(std::string(1, w[pos]));
    return w.substr(0, pos) + rng.Choice(options) + w.substr(pos + 1);
  }
};

class Typos : public WordNoise {
 public:
  using WordNoise::WordNoise;

 protected:
  bool Candidate(const std::string& w) const override { return w.size() >= 3; }
  std::string PerturbWord(const std::string& w, Rng& rng) const override {
    return InnerTypo(w, rng, params().max_edits_per_word >= 2);
  }
};

class SpellingError : public WordNoise {
 public:
  using WordNoise::WordNoise;

 protected:
  bool Candidate(const std::string& w) const override {
    return resources().error_forms.Find(ToLower(w)) != nullptr;
  }
  std::string PerturbWord(const std::string& w, Rng& rng) const override {
    return MatchCase(w, rng.Choice(*resources().error_forms.Find(ToLower(w))));
  }
};

// --- Case -------------------------------------------------------------------

class WordCase : public Transform {
 public:
  enum Mode { kLower, kUpper, kTitle };
  WordCase(std::string name, TransformOptions options, Mode mode)
      : Transform(std::move(name), std::move(options)), mode_(mode) {}
  bool Supports(Task) const override { return true; }

  static std::string Map(const std::string& t, Mode mode) {
    switch (mode) {
      case kLower:
        return ToLower(t);
      case kUpper:
        return ToUpper(t);
      case kTitle: {
        std::string out = ToLower(t);
        for (char& c : out) {
          if (std::isalpha(static_cast<unsigned char>(c))) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            break;
          }
        }
        return out;
      }
    }
    return t;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng&) const override {
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string mapped = Map(f.token(i), mode_);
        if (mapped != f.token(i) && !f.is_frozen(i)) {
          v.trace.Add(name, Edit::Replace(i, i + 1, {mapped}));
        }
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": case already mapped");
    return v;
  }

 private:
  Mode mode_;
};

// --- Contractions --------------------------------------------------------------

class Contraction : public Transform {
 public:
  enum Direction { kContract, kExpand, kEither };
  Contraction(std::string name, TransformOptions options, Direction d)
      : Transform(std::move(name), std::move(options)), direction_(d) {}
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    Variant v;
    if (direction_ != kExpand) v = Contract(sample, rng);
    if (v.trace.empty() && direction_ != kContract) v = Expand(sample);
    if (v.trace.empty()) throw NotApplicable(name() + ": no table match");
    return v;
  }

 private:
  // Every phrase match is a candidate; overlapping matches ("I will not")
  // are resolved in seeded order.
  Variant Contract(const Sample& sample, Rng& rng) const {
    const ContractionTable& table = resources().contractions;
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      const std::vector<std::string> lower = Lowered(f);
      std::vector<std::pair<Range, const std::string*>> matches;
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::string phrase = lower[i];
        for (std::size_t len = 2;
             len <= table.max_phrase_tokens() && i + len <= f.size(); ++len) {
          phrase += " " + lower[i + len - 1];
          const std::string* c = table.Contract(phrase);
          if (c != nullptr && guard.CanReplace(i, i + len)) {
            matches.push_back({{i, i + len}, c});
          }
        }
      }
      std::vector<bool> used(f.size(), false);
      for (std::size_t m : rng.Sample(matches.size(), matches.size())) {
        const auto& [r, c] = matches[m];
        if (std::any_of(used.begin() + r.start, used.begin() + r.end,
                        [](bool u) { return u; })) {
          continue;
        }
        std::fill(used.begin() + r.start, used.begin() + r.end, true);
        v.trace.Add(name, Edit::Replace(r.start, r.end, {MatchCase(f.token(r.start), *c)}));
      }
    }
    return v;
  }

  Variant Expand(const Sample& sample) const {
    const ContractionTable& table = resources().contractions;
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string* p = table.Expand(ToLower(f.token(i)));
        if (p == nullptr || !guard.CanReplace(i, i + 1)) continue;
        std::vector<std::string> tokens = SplitWhitespace(*p);
        tokens[0] = MatchCase(f.token(i), tokens[0]);
        if (tokens[0] == "i") tokens[0] = "I";
        v.trace.Add(name, Edit::Replace(i, i + 1, std::move(tokens)));
      }
    }
    return v;
  }

  Direction direction_;
};

// --- Lexical swaps -----------------------------------------------------------

class SwapLexical : public Transform {
 public:
  SwapLexical(std::string name, TransformOptions options, bool antonym)
      : Transform(std::move(name), std::move(options)), antonym_(antonym) {}

  // Antonyms keep labels only where the label does not depend on meaning.
  bool Supports(Task task) const override {
    return !antonym_ || task == Task::kSequenceLabeling;
  }

 protected:
  bool QuietOnUnsupportedTask() const override { return true; }

  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const WordRelation& rel =
        antonym_ ? resources().antonyms : resources().synonyms;
    auto lookup = [&](const std::string& w) {
      const std::vector<std::string>* hit = rel.Find(w);
      return hit != nullptr ? hit : rel.Find(ToLower(w));
    };
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      std::size_t eligible = 0;
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!IsEligibleWord(f, i, params())) continue;
        ++eligible;
        if (lookup(f.token(i)) && guard.CanReplace(i, i + 1)) candidates.push_back(i);
      }
      for (std::size_t i :
           PickSites(candidates, eligible, params().word_ratio, rng)) {
        const std::string& w = f.token(i);
        v.trace.Add(name, Edit::Replace(i, i + 1,
                                        {MatchCase(w, rng.Choice(*lookup(w)))}));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no lexicon hit");
    return v;
  }

 private:
  bool antonym_;
};

class SwapNum : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling || task == Task::kClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      std::vector<std::size_t> numerals;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (IsNumeral(f.token(i)) && guard.CanReplace(i, i + 1)) {
          numerals.push_back(i);
        }
      }
      for (std::size_t i :
           PickSites(numerals, numerals.size(), params().word_ratio, rng)) {
        const std::string& w = f.token(i);
        v.trace.Add(name, Edit::Replace(i, i + 1, {RandomNumeral(w.size(), w, rng)}));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no numeral");
    return v;
  }
};

// --- Insertions ---------------------------------------------------------------

class InsertAdv : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& adverbs = resources().adverbs;
    if (adverbs.empty()) throw ConfigError("adverb list is empty");
    const bool pos = IsPosTagged(sample);
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      for (const VerbGroup& g : FindVerbGroups(f, resources())) {
        const std::size_t at =
            (g.tense == Tense::kProgressive || g.tense == Tense::kPerfect)
                ? g.main
                : g.start;
        if (at == 0 || !guard.CanInsert(at)) continue;
        const std::string prev = ToLower(f.token(at - 1));
        if (std::find(adverbs.begin(), adverbs.end(), prev) != adverbs.end()) {
          continue;
        }
        v.trace.Add(name, Edit::Insert(at, {rng.Choice(adverbs)},
                                       pos ? std::vector<std::string>{"RB"}
                                           : std::vector<std::string>{}));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no verb found");
    return v;
  }
};

class AppendIrr : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& corpus = resources().irrelevant_sentences;
    if (corpus.empty()) throw ConfigError("irrelevant-sentence corpus is empty");
    const std::string position = options().extra.value("position", "append");
    if (position != "append" && position != "prepend" && position != "both") {
      throw ConfigError("AppendIrr position must be append, prepend or both");
    }
    Variant v;
    for (const std::string& name : TailFields(sample)) {
      const TextField& f = sample.field(name);
      auto sentence = [&] {
        std::vector<std::string> out;
        for (const Token& t : Tokenize(rng.Choice(corpus))) out.push_back(t.text);
        return out;
      };
      if (position != "append") v.trace.Add(name, Edit::Insert(0, sentence()));
      if (position != "prepend") {
        std::vector<std::string> tail;
        if (!f.empty() && !IsTerminal(f.token(f.size() - 1))) tail.push_back(".");
        for (std::string& w : sentence()) tail.push_back(std::move(w));
        v.trace.Add(name, Edit::Insert(f.size(), std::move(tail)));
      }
    }
    return v;
  }
};

class TwitterType : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const auto& handles = resources().twitter_handles;
    const auto& urls = resources().twitter_urls;
    if (handles.empty() || urls.empty()) {
      throw ConfigError("twitter handle or URL list is empty");
    }
    Variant v;
    for (const std::string& name : TailFields(sample)) {
      const TextField& f = sample.field(name);
      if (f.empty()) continue;
      const std::size_t mode = rng.Uniform(3);  // prefix, suffix, both
      if (mode != 1) v.trace.Add(name, Edit::Insert(0, {rng.Choice(handles)}));
      if (mode != 0) {
        std::vector<std::string> tail;
        if (!IsTerminal(f.token(f.size() - 1))) tail.push_back(".");
        tail.push_back(rng.Choice(urls));
        v.trace.Add(name, Edit::Insert(f.size(), std::move(tail)));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": empty text");
    return v;
  }
};

class Punctuation : public Transform {
 public:
  Punctuation(std::string name, TransformOptions options, bool add)
      : Transform(std::move(name), std::move(options)), add_(add) {}
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    Variant v = add_ ? Add(sample, rng) : Remove(sample);
    if (v.trace.empty()) throw NotApplicable(name() + ": no site");
    return v;
  }

 private:
  Variant Add(const Sample& sample, Rng& rng) const {
    const bool pos = IsPosTagged(sample);
    auto tags = [&](const char* t) {
      return pos ? std::vector<std::string>{t} : std::vector<std::string>{};
    };
    Variant v;
    for (const std::string& name : TailFields(sample)) {
      const TextField& f = sample.field(name);
      if (f.empty()) continue;
      const SiteGuard guard(sample, name);
      std::size_t close = f.size();
      while (close > 0 && IsTerminal(f.token(close - 1))) --close;
      const bool bracket_ok = close > 0 && guard.CanInsert(close);
      std::vector<std::size_t> commas;
      for (std::size_t p = 1; p < f.size(); ++p) {
        if (!IsPunctuation(f.token(p - 1)) && !IsPunctuation(f.token(p)) &&
            guard.CanInsert(p)) {
          commas.push_back(p);
        }
      }
      const bool use_bracket =
          bracket_ok && (commas.empty() || rng.Bernoulli(0.5));
      if (use_bracket) {
        v.trace.Add(name, Edit::Insert(0, {"("}, tags("-LRB-")));
        v.trace.Add(name, Edit::Insert(close, {")"}, tags("-RRB-")));
      } else if (!commas.empty()) {
        v.trace.Add(name, Edit::Insert(rng.Choice(commas), {","}, tags(",")));
      }
    }
    return v;
  }

  Variant Remove(const Sample& sample) const {
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      std::size_t start = f.size();
      while (start > 1 && IsTerminal(f.token(start - 1))) --start;
      if (start < f.size() && SiteGuard(sample, name).CanDelete(start, f.size())) {
        v.trace.Add(name, Edit::Delete(start, f.size()));
      }
    }
    return v;
  }

  bool add_;
};

// --- Verbs --------------------------------------------------------------------

class TenseShift : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task != Task::kPairClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const bool pos = IsPosTagged(sample);
    Variant v;
    for (const std::string& name : TextFields(sample)) {
      const TextField& f = sample.field(name);
      const SiteGuard guard(sample, name);
      for (const VerbGroup& g : FindVerbGroups(f, resources())) {
        if (!guard.CanReplace(g.start, g.end)) continue;
        std::vector<Tense> targets;
        for (Tense t : {Tense::kPresent, Tense::kPast, Tense::kProgressive,
                        Tense::kPerfect}) {
          if (t == g.tense) continue;
          if (t == Tense::kProgressive && g.verb->base == "be") continue;
          targets.push_back(t);
        }
        Rendered r = RenderVerb(*g.verb, rng.Choice(targets), g.person);
        r.tokens[0] = MatchCase(f.token(g.start), r.tokens[0]);
        v.trace.Add(name, Edit::Replace(g.start, g.end, r.tokens,
                                        pos ? r.tags : std::vector<std::string>{}));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no verb in table");
    if (pos) v.trace.Relabel("POS tags follow the new inflection");
    return v;
  }
};

class ReverseNeg : public Transform {
 public:
  ReverseNeg(std::string name, TransformOptions options, bool add)
      : Transform(std::move(name), std::move(options)), add_(add) {}
  bool Supports(Task task) const override {
    return task == Task::kSequenceLabeling;
  }

 protected:
  bool QuietOnUnsupportedTask() const override { return true; }

  Variant Perturb(const Sample& sample, Rng& rng) const override {
    struct Site {
      Edit edit;
    };
    const bool pos = IsPosTagged(sample);
    const TextField& f = sample.field("text");
    const SiteGuard guard(sample, "text");
    const std::vector<std::string> lower = Lowered(f);
    std::vector<Edit> sites;
    auto tags = [&](std::vector<std::string> t) {
      return pos ? t : std::vector<std::string>{};
    };
    if (add_) {
      static const std::map<std::string, std::string> kNegated = {
          {"is", "isn't"},   {"are", "aren't"}, {"was", "wasn't"},
          {"were", "weren't"}, {"has", "hasn't"}, {"have", "haven't"}};
      for (const VerbGroup& g : FindVerbGroups(f, resources())) {
        if (g.start > 0 && (lower[g.start - 1] == "not" ||
                            lower[g.start - 1] == "never")) {
          continue;
        }
        const std::string& first = lower[g.start];
        const bool aux_first = g.tense == Tense::kProgressive ||
                               g.tense == Tense::kPerfect ||
                               g.verb->base == "be";
        if (aux_first) {
          if (!guard.CanReplace(g.start, g.start + 1)) continue;
          if (first == "am") {
            sites.push_back(Edit::Replace(g.start, g.start + 1,
                                          {f.token(g.start), "not"},
                                          tags({"VBP", "RB"})));
          } else if (kNegated.count(first)) {
            sites.push_back(Edit::Replace(
                g.start, g.start + 1,
                {MatchCase(f.token(g.start), kNegated.at(first))}));
          }
          continue;
        }
        if (!guard.CanReplace(g.main, g.main + 1)) continue;
        std::string aux = "don't";
        std::string aux_tag = "VBP";
        if (g.tense == Tense::kPast) {
          aux = "didn't";
          aux_tag = "VBD";
        } else if (g.person == Person::kThird) {
          aux = "doesn't";
          aux_tag = "VBZ";
        }
        sites.push_back(Edit::Replace(g.main, g.main + 1,
                                      {MatchCase(f.token(g.main), aux), g.verb->base},
                                      tags({aux_tag, "VB"})));
      }
    } else {
      static const std::map<std::string, std::string> kPositive = {
          {"isn't", "is"},       {"aren't", "are"},     {"wasn't", "was"},
          {"weren't", "were"},   {"hasn't", "has"},     {"haven't", "have"},
          {"hadn't", "had"},     {"can't", "can"},      {"won't", "will"},
          {"wouldn't", "would"}, {"couldn't", "could"}, {"shouldn't", "should"},
          {"mustn't", "must"}};
      static const std::map<std::string, std::pair<VerbForm, std::string>>
          kDoAux = {{"doesn't", {VerbForm::kThird, "VBZ"}},
                    {"don't", {VerbForm::kBase, "VBP"}},
                    {"didn't", {VerbForm::kPast, "VBD"}},
                    {"does", {VerbForm::kThird, "VBZ"}},
                    {"do", {VerbForm::kBase, "VBP"}},
                    {"did", {VerbForm::kPast, "VBD"}}};
      auto base_verb = [&](std::size_t i) -> const VerbForms* {
        if (i >= lower.size()) return nullptr;
        for (const auto& [v, form] : resources().verbs.Lookup(lower[i])) {
          if (form == VerbForm::kBase && v->base != "be" && v->base != "do") {
            return v;
          }
        }
        return nullptr;
      };
      for (std::size_t i = 0; i < lower.size(); ++i) {
        auto aux = kDoAux.find(lower[i]);
        if (aux != kDoAux.end()) {
          const bool contracted = lower[i].back() == 't';
          const std::size_t verb_at = contracted ? i + 1 : i + 2;
          if (!contracted && (i + 1 >= lower.size() || lower[i + 1] != "not")) {
            continue;
          }
          const VerbForms* v = base_verb(verb_at);
          if (v == nullptr || !guard.CanReplace(i, verb_at + 1)) continue;
          sites.push_back(Edit::Replace(
              i, verb_at + 1,
              {MatchCase(f.token(i), VerbTable::Form(*v, aux->second.first))},
              tags({aux->second.second})));
          continue;
        }
        auto pos_it = kPositive.find(lower[i]);
        if (pos_it != kPositive.end() && guard.CanReplace(i, i + 1)) {
          sites.push_back(Edit::Replace(i, i + 1,
                                        {MatchCase(f.token(i), pos_it->second)}));
          continue;
        }
        if (lower[i] == "not" && i > 0 && guard.CanDelete(i, i + 1)) {
          static const std::set<std::string> kHosts = {
              "am", "is", "are", "was", "were", "has", "have", "had", "will",
              "would", "can", "could", "should", "must", "may", "might"};
          if (kHosts.count(lower[i - 1])) sites.push_back(Edit::Delete(i, i + 1));
        }
      }
    }
    if (sites.empty()) {
      throw NotApplicable(name() + (add_ ? ": no verb to negate" : ": no negation"));
    }
    Variant v;
    v.trace.Add("text", rng.Choice(sites));
    return v;
  }

 private:
  bool add_;
};

// --- Entities -------------------------------------------------------------------

class SwapNamedEnt : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const Gazetteer& gaz = resources().gazetteer;
    const NameSites sites = CollectNames(sample, gaz);
    std::vector<std::size_t> swappable;
    for (std::size_t j = 0; j < sites.names.size(); ++j) {
      if (!gaz.InCategory(sites.category.at(sites.names[j])).empty()) {
        swappable.push_back(j);
      }
    }
    Variant v;
    for (std::size_t j : PickSites(swappable, swappable.size(),
                                   params().word_ratio, rng)) {
      const std::string& name = sites.names[j];
      const GazetteerEntry* source = gaz.FindMain(name);
      std::vector<const GazetteerEntry*> pool;
      for (const GazetteerEntry* e : gaz.InCategory(sites.category.at(name))) {
        if (e->name == name || SampleMentions(sample, e->name)) continue;
        if (source != nullptr && !source->gender.empty() &&
            e->gender != source->gender) {
          continue;
        }
        pool.push_back(e);
      }
      if (pool.empty()) continue;
      const GazetteerEntry* pick = rng.Choice(pool);
      for (const Mention& m : sites.mentions.at(name)) {
        v.trace.Add(m.field, Edit::Replace(m.start, m.end, pick->tokens));
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": no entity");
    return v;
  }
};

class Prejudice : public Transform {
 public:
  Prejudice(std::string name, TransformOptions options, std::string target)
      : Transform(std::move(name), std::move(options)), target_(std::move(target)) {
    if (target_.rfind("region:", 0) == 0) {
      region_ = target_.substr(7);
      bool any = false;
      for (const GazetteerEntry* e : resources().gazetteer.InCategory("LOC")) {
        any = any || e->region == region_;
      }
      if (!any) throw ConfigError("no gazetteer location in region " + region_);
    } else if (target_ != "man" && target_ != "woman") {
      throw ConfigError("Prejudice target must be man, woman or region:<name>");
    }
  }
  bool Supports(Task) const override { return true; }

 protected:
  Variant Perturb(const Sample& sample, Rng& rng) const override {
    const Gazetteer& gaz = resources().gazetteer;
    const bool by_region = !region_.empty();
    const NameSites sites = CollectNames(sample, gaz);
    std::vector<std::string> sources;
    for (const std::string& name : sites.names) {
      const GazetteerEntry* e = gaz.FindMain(name);
      if (e == nullptr) continue;
      if (by_region ? (e->category == "LOC" && e->region != region_)
                    : (e->category == "PER" && e->gender != target_)) {
        sources.push_back(name);
      }
    }
    if (sources.empty()) throw NotApplicable(name() + ": no mention to swap");
    std::vector<const GazetteerEntry*> pool;
    for (const GazetteerEntry* e : gaz.InCategory(by_region ? "LOC" : "PER")) {
      const bool match = by_region ? e->region == region_ : e->gender == target_;
      if (match && !SampleMentions(sample, e->name)) pool.push_back(e);
    }
    if (pool.empty()) throw NotApplicable(name() + ": no replacement available");
    // Without replacement while the pool lasts; the same source name always
    // maps to the same replacement.
    std::vector<std::size_t> order = rng.Sample(pool.size(), pool.size());
    Variant v;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const GazetteerEntry* pick =
          j < order.size() ? pool[order[j]] : pool[rng.Uniform(pool.size())];
      for (const Mention& m : sites.mentions.at(sources[j])) {
        v.trace.Add(m.field, Edit::Replace(m.start, m.end, pick->tokens));
      }
    }
    return v;
  }

 private:
  std::string target_;
  std::string region_;
};

// --- Plug-in slot -------------------------------------------------------------

class PluginRewrite : public Transform {
 public:
  using Transform::Transform;
  bool Supports(Task task) const override {
    return task == Task::kClassification || task == Task::kPairClassification;
  }

 protected:
  Variant Perturb(const Sample& sample, Rng&) const override {
    if (!options().rewriter) {
      throw AdapterUnavailable(name() + " needs an external rewrite adapter");
    }
    const std::vector<std::string> fields = TextFields(sample);
    std::vector<std::string> texts;
    for (const std::string& f : fields) texts.push_back(sample.field(f).raw());
    const std::vector<std::string> rewrites = options().rewriter(sample.task, texts);
    if (rewrites.size() != texts.size()) {
      throw ProtocolError("rewrite count " + std::to_string(rewrites.size()) +
                          " does not match " + std::to_string(texts.size()));
    }
    Variant v;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const TextField& f = sample.field(fields[k]);
      std::vector<std::string> tokens;
      for (const Token& t : Tokenize(rewrites[k])) tokens.push_back(t.text);
      if (tokens.empty()) throw NotApplicable(name() + ": empty rewrite");
      for (const Edit& e : DiffEdits(f.texts(), tokens)) {
        for (std::size_t i = e.start; i < e.end; ++i) {
          if (f.is_frozen(i)) throw NotApplicable(name() + ": rewrite edits a frozen token");
        }
        v.trace.Add(fields[k], e);
      }
    }
    if (v.trace.empty()) throw NotApplicable(name() + ": rewrite equals input");
    return v;
  }
};

}  // namespace

const std::vector<std::string>& UniversalTransformNames() {
  static const std::vector<std::string> kNames = {
      "Keyboard",       "Ocr",          "Typos",          "SpellingError",
      "WordCase:lower", "WordCase:upper", "WordCase:title", "Contraction",
      "Contraction:contract", "Contraction:expand", "SwapSyn", "SwapAnt",
      "SwapNum",        "InsertAdv",    "AppendIrr",      "TwitterType",
      "AddPunc",        "RmvPunc",      "Tense",          "SwapNamedEnt",
      "Prejudice:man",  "Prejudice:woman", "AddNeg",      "RmvNeg",
      "BackTrans",      "MLMSuggestion"};
  return kNames;
}

std::unique_ptr<Transform> MakeUniversalTransform(const std::string& name,
                                                  const TransformOptions& o) {
  if (name == "Keyboard") return std::make_unique<Keyboard>(name, o);
  if (name == "Ocr") return std::make_unique<Ocr>(name, o);
  if (name == "Typos") return std::make_unique<Typos>(name, o);
  if (name == "SpellingError") return std::make_unique<SpellingError>(name, o);
  if (name == "WordCase:lower") {
    return std::make_unique<WordCase>(name, o, WordCase::kLower);
  }
  if (name == "WordCase:upper") {
    return std::make_unique<WordCase>(name, o, WordCase::kUpper);
  }
  if (name == "WordCase:title") {
    return std::make_unique<WordCase>(name, o, WordCase::kTitle);
  }
  if (name == "Contraction") {
    return std::make_unique<Contraction>(name, o, Contraction::kEither);
  }
  if (name == "Contraction:contract") {
    return std::make_unique<Contraction>(name, o, Contraction::kContract);
  }
  if (name == "Contraction:expand") {
    return std::make_unique<Contraction>(name, o, Contraction::kExpand);
  }
  if (name == "SwapSyn") return std::make_unique<SwapLexical>(name, o, false);
  if (name == "SwapAnt") return std::make_unique<SwapLexical>(name, o, true);
  if (name == "SwapNum") return std::make_unique<SwapNum>(name, o);
  if (name == "InsertAdv") return std::make_unique<InsertAdv>(name, o);
  if (name == "AppendIrr") return std::make_unique<AppendIrr>(name, o);
  if (name == "TwitterType") return std::make_unique<TwitterType>(name, o);
  if (name == "AddPunc") return std::make_unique<Punctuation>(name, o, true);
  if (name == "RmvPunc") return std::make_unique<Punctuation>(name, o, false);
  if (name == "Tense") return std::make_unique<TenseShift>(name, o);
  if (name == "SwapNamedEnt") return std::make_unique<SwapNamedEnt>(name, o);
  if (name.rfind("Prejudice:", 0) == 0) {
    return std::make_unique<Prejudice>(name, o, name.substr(10));
  }
  if (name == "AddNeg") return std::make_unique<ReverseNeg>(name, o, true);
  if (name == "RmvNeg") return std::make_unique<ReverseNeg>(name, o, false);
  if (name == "BackTrans" || name == "MLMSuggestion") {
    return std::make_unique<PluginRewrite>(name, o);
  }
  return nullptr;
}

}  // namespace flint::internal
