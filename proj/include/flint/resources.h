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

// Lexicons and tables behind the rule-based transformations.
//
// Every table is a UTF-8 text file in the resource directory. TSV tables are
// "key<TAB>space-separated values", with '#' comments and blank lines
// ignored. The gazetteer, entity summaries and a few template tables are
// JSON. Each loader validates the table's invariant and throws
// LexiconFormatError (with line number) or InvariantError (with the entry).

#ifndef FLINT_RESOURCES_H_
#define FLINT_RESOURCES_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flint {

// Raw TSV rows: (line number, key, values).
struct TsvRow {
  std::size_t line = 0;
  std::string key;
  std::vector<std::string> values;
};
std::vector<TsvRow> ParseTsv(std::string_view text);

// --- Character-level tables -----------------------------------------------

// QWERTY neighbours. Symmetric: loading adds the reverse of every edge.
class AdjacencyMap {
 public:
  static AdjacencyMap Parse(std::string_view text);
  const std::set<char>* Find(char c) const;
  bool Adjacent(char a, char b) const;
  const std::map<char, std::set<char>>& entries() const { return map_; }

 private:
  std::map<char, std::set<char>> map_;
};

// Grapheme -> visually confusable replacements ("i" -> "1").
class ConfusionTable {
 public:
  static ConfusionTable Parse(std::string_view text);
  const std::vector<std::string>* Find(std::string_view grapheme) const;
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::vector<std::string>> map_;
};

// --- Word-level tables -------------------------------------------------------

// Word -> list of related words. Used for attested misspellings, synonyms
// and antonyms; a word never relates to itself.
class WordRelation {
 public:
  static WordRelation Parse(std::string_view text, std::string_view what);
  const std::vector<std::string>* Find(std::string_view word) const;
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::vector<std::string>> map_;
};

// Phrase <-> contraction, matched case-insensitively. Bijective per direction.
class ContractionTable {
 public:
  static ContractionTable Parse(std::string_view text);
  const std::string* Contract(std::string_view phrase) const;
  const std::string* Expand(std::string_view contraction) const;
  const std::vector<std::pair<std::string, std::string>>& pairs() const {
    return pairs_;
  }
  std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::string> contract_;
  std::map<std::string, std::string> expand_;
  std::size_t max_phrase_tokens_ = 1;
};

enum class Polarity { kPositive, kNegative };

struct SentimentEntry {
  Polarity polarity = Polarity::kPositive;
  std::string reversal;
};

// Word -> polarity and reversal word. The reversal is itself an entry with
// the opposite polarity.
class SentimentLexicon {
 public:
  static SentimentLexicon Parse(std::string_view text);
  const SentimentEntry* Find(std::string_view word) const;
  const std::map<std::string, SentimentEntry>& entries() const { return map_; }

 private:
  std::map<std::string, SentimentEntry> map_;
};

// Acronym -> expansion tokens. Case-sensitive on the acronym.
class AcronymTable {
 public:
  static AcronymTable Parse(std::string_view text);
  const std::vector<std::string>* Find(std::string_view acronym) const;
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::vector<std::string>> map_;
};

// --- Gazetteer -----------------------------------------------------------

struct GazetteerEntry {
  std::string name;
  std::vector<std::string> tokens;
  std::string category;  // PER | LOC | ORG
  std::string gender;    // PER only: man | woman
  std::string region;    // LOC only
};

// Category-keyed entity surface forms. The main partition is what a model may
// have seen; the held-out partition supplies out-of-vocabulary replacements.
class Gazetteer {
 public:
  static Gazetteer Parse(std::string_view json_text);

  const std::vector<GazetteerEntry>& main() const { return main_; }
  const std::vector<GazetteerEntry>& held_out() const { return held_out_; }
  std::vector<std::string> categories() const;

  // Entries of `category` in the given partition.
  std::vector<const GazetteerEntry*> InCategory(std::string_view category,
                                                bool held_out = false) const;
  // Category of an exact surface form in the main partition.
  std::optional<std::string> CategoryOf(std::string_view name) const;
  const GazetteerEntry* FindMain(std::string_view name) const;
  bool InMain(std::string_view name) const { return FindMain(name) != nullptr; }

  // Longest main-partition match starting at token `start`; returns the
  // match length (0 if none).
  std::size_t LongestMatch(const std::vector<std::string>& tokens,
                           std::size_t start,
                           const GazetteerEntry** entry) const;
  std::size_t max_tokens() const { return max_tokens_; }

 private:
  std::vector<GazetteerEntry> main_;
  std::vector<GazetteerEntry> held_out_;
  std::map<std::string, std::size_t> main_index_;
  std::size_t max_tokens_ = 1;
};

// --- Verb and part-of-speech tables -----------------------------------------

struct VerbForms {
  std::string base;
  std::string third;       // 3rd person singular present
  std::string past;
  std::string gerund;
  std::string participle;
};

enum class VerbForm { kBase, kThird, kPast, kGerund, kParticiple };

class VerbTable {
 public:
  static VerbTable Parse(std::string_view text);
  // Every (lemma, form) reading of a lowercase surface word.
  std::vector<std::pair<const VerbForms*, VerbForm>> Lookup(
      std::string_view word) const;
  const VerbForms* FindLemma(std::string_view base) const;
  static const std::string& Form(const VerbForms& v, VerbForm f);
  const std::vector<VerbForms>& verbs() const { return verbs_; }

 private:
  std::vector<VerbForms> verbs_;
  std::multimap<std::string, std::pair<std::size_t, VerbForm>> index_;
};

// Word -> POS tags it can hold.
class MultiPosTable {
 public:
  static MultiPosTable Parse(std::string_view text);
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::vector<std::string>> map_;
};

// Derivational prefixes. Excluded prefixes change the root's POS and are
// never swapped in or out.
struct PrefixTable {
  std::vector<std::string> swappable;
  std::set<std::string> excluded;
  std::set<std::string> words;  // lexicon a swapped word must belong to

  static PrefixTable Parse(std::string_view prefixes, std::string_view words);
};

// --- Sentence-level snippets -------------------------------------------------

struct AspectSnippet {
  std::string aspect;
  std::string polarity;  // positive | negative
  std::vector<std::string> tokens;
};

struct OverlapVocab {
  std::vector<std::string> nouns;
  std::vector<std::string> clause_verbs;      // take a clause: heard, knew
  std::vector<std::string> transitive_verbs;  // saw, admired
  std::vector<std::string> intransitive_verbs;  // resigned, danced
  std::vector<std::string> prepositions;      // near, behind
};

struct Resources {
  AdjacencyMap keyboard;
  ConfusionTable ocr;
  WordRelation error_forms;
  ContractionTable contractions;
  WordRelation synonyms;
  WordRelation antonyms;
  Gazetteer gazetteer;
  SentimentLexicon sentiment;
  AcronymTable acronyms;
  VerbTable verbs;
  MultiPosTable multi_pos;
  PrefixTable prefixes;
  std::vector<std::string> adverbs;
  std::vector<std::string> irrelevant_sentences;
  std::vector<std::string> twitter_handles;
  std::vector<std::string> twitter_urls;
  std::map<std::string, std::map<std::string, std::string>> summaries;  // kind -> name -> summary
  std::vector<std::string> negation_words;
  std::vector<std::string> question_words;
  std::vector<AspectSnippet> aspect_snippets;
  OverlapVocab overlap;
  std::map<std::string, std::vector<std::string>> keywords;  // class -> words
  // Optional human-evaluation annotations: transform -> metric -> value.
  std::map<std::string, std::map<std::string, double>> human_eval;

  std::string directory;

  // Loads every table from `dir`. Throws on the first invalid table.
  static Resources Load(const std::string& dir);
};

// Directory baked in at build time.
std::string DefaultResourceDir();

// Bundled resources, loaded once.
const Resources& DefaultResources();

// Word-list file: one entry per line, '#' comments.
std::vector<std::string> ParseWordList(std::string_view text);

}  // namespace flint

#endif  // FLINT_RESOURCES_H_
