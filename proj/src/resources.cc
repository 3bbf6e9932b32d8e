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

#include "flint/resources.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "flint/error.h"
#include "flint/text.h"

namespace flint {

using json = nlohmann::json;

namespace {

std::string LineTag(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

std::vector<TsvRow> ParseTsv(std::string_view text) {
  std::vector<TsvRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw LexiconFormatError(LineTag(line_no) + ": expected key<TAB>values");
    }
    TsvRow row;
    row.line = line_no;
    row.key = std::string(line.substr(0, tab));
    row.values = SplitWhitespace(line.substr(tab + 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> ParseWordList(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

// --- AdjacencyMap ---

AdjacencyMap AdjacencyMap::Parse(std::string_view text) {
  AdjacencyMap m;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.key.size() != 1) {
      throw LexiconFormatError(LineTag(row.line) + ": key must be one character");
    }
    if (row.values.empty()) {
      throw LexiconFormatError(LineTag(row.line) + ": no neighbours");
    }
    const char key = row.key[0];
    for (const std::string& v : row.values) {
      for (char c : v) {
        if (c == key) {
          throw InvariantError(std::string("'") + key + "' adjacent to itself");
        }
        m.map_[key].insert(c);
        m.map_[c].insert(key);
      }
    }
  }
  return m;
}

const std::set<char>* AdjacencyMap::Find(char c) const {
  auto it = map_.find(c);
  return it == map_.end() ? nullptr : &it->second;
}

bool AdjacencyMap::Adjacent(char a, char b) const {
  const std::set<char>* n = Find(a);
  return n != nullptr && n->count(b) > 0;
}

// --- ConfusionTable ---

ConfusionTable ConfusionTable::Parse(std::string_view text) {
  ConfusionTable t;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.empty()) {
      throw LexiconFormatError(LineTag(row.line) + ": no replacements");
    }
    for (const std::string& v : row.values) {
      if (v == row.key) {
        throw InvariantError("\"" + row.key + "\" confusable with itself");
      }
    }
    auto& list = t.map_[row.key];
    list.insert(list.end(), row.values.begin(), row.values.end());
  }
  return t;
}

const std::vector<std::string>* ConfusionTable::Find(
    std::string_view grapheme) const {
  auto it = map_.find(std::string(grapheme));
  return it == map_.end() ? nullptr : &it->second;
}

// --- WordRelation ---

WordRelation WordRelation::Parse(std::string_view text, std::string_view what) {
  WordRelation r;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.empty()) {
      throw LexiconFormatError(LineTag(row.line) + ": no " + std::string(what));
    }
    for (const std::string& v : row.values) {
      if (ToLower(v) == ToLower(row.key)) {
        throw InvariantError("\"" + row.key + "\" listed as its own " +
                             std::string(what));
      }
    }
    auto& list = r.map_[row.key];
    for (const std::string& v : row.values) {
      if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
    }
  }
  return r;
}

const std::vector<std::string>* WordRelation::Find(std::string_view word) const {
  auto it = map_.find(std::string(word));
  return it == map_.end() ? nullptr : &it->second;
}

// --- ContractionTable ---

ContractionTable ContractionTable::Parse(std::string_view text) {
  ContractionTable t;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.size() != 1) {
      throw LexiconFormatError(LineTag(row.line) +
                               ": expected exactly one contraction");
    }
    const std::string phrase = ToLower(row.key);
    const std::string contraction = ToLower(row.values[0]);
    if (SplitWhitespace(phrase).size() < 2) {
      throw LexiconFormatError(LineTag(row.line) +
                               ": phrase must have two or more words");
    }
    if (t.contract_.count(phrase)) {
      throw InvariantError("phrase \"" + phrase + "\" listed twice");
    }
    if (t.expand_.count(contraction)) {
      throw InvariantError("contraction \"" + contraction + "\" listed twice");
    }
    t.contract_[phrase] = contraction;
    t.expand_[contraction] = phrase;
    t.pairs_.emplace_back(phrase, contraction);
    t.max_phrase_tokens_ =
        std::max(t.max_phrase_tokens_, SplitWhitespace(phrase).size());
  }
  return t;
}

const std::string* ContractionTable::Contract(std::string_view phrase) const {
  auto it = contract_.find(ToLower(phrase));
  return it == contract_.end() ? nullptr : &it->second;
}

const std::string* ContractionTable::Expand(std::string_view contraction) const {
  auto it = expand_.find(ToLower(contraction));
  return it == expand_.end() ? nullptr : &it->second;
}

// --- SentimentLexicon ---

SentimentLexicon SentimentLexicon::Parse(std::string_view text) {
  SentimentLexicon lex;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.size() != 2 ||
        (row.values[0] != "pos" && row.values[0] != "neg")) {
      throw LexiconFormatError(LineTag(row.line) +
                               ": expected <pos|neg> <reversal>");
    }
    SentimentEntry e;
    e.polarity = row.values[0] == "pos" ? Polarity::kPositive : Polarity::kNegative;
    e.reversal = row.values[1];
    lex.map_[ToLower(row.key)] = std::move(e);
  }
  for (const auto& [word, entry] : lex.map_) {
    auto it = lex.map_.find(ToLower(entry.reversal));
    if (it == lex.map_.end()) {
      throw InvariantError("reversal \"" + entry.reversal + "\" of \"" + word +
                           "\" has no polarity entry");
    }
    if (it->second.polarity == entry.polarity) {
      throw InvariantError("reversal \"" + entry.reversal + "\" of \"" + word +
                           "\" has the same polarity");
    }
  }
  return lex;
}

const SentimentEntry* SentimentLexicon::Find(std::string_view word) const {
  auto it = map_.find(ToLower(word));
  return it == map_.end() ? nullptr : &it->second;
}

// --- AcronymTable ---

AcronymTable AcronymTable::Parse(std::string_view text) {
  AcronymTable t;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.size() < 2) {
      throw LexiconFormatError(LineTag(row.line) + ": expansion too short");
    }
    if (t.map_.count(row.key)) {
      throw InvariantError("acronym \"" + row.key + "\" listed twice");
    }
    t.map_[row.key] = row.values;
  }
  return t;
}

const std::vector<std::string>* AcronymTable::Find(std::string_view a) const {
  auto it = map_.find(std::string(a));
  return it == map_.end() ? nullptr : &it->second;
}

// --- Gazetteer ---

Gazetteer Gazetteer::Parse(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw LexiconFormatError(std::string("gazetteer: ") + e.what());
  }
  Gazetteer g;
  std::map<std::string, std::string> seen;  // name -> category
  auto read = [&](const char* part, std::vector<GazetteerEntry>& out) {
    if (!j.contains(part)) return;
    std::size_t n = 0;
    for (const json& e : j.at(part)) {
      ++n;
      GazetteerEntry entry;
      try {
        entry.name = e.at("name").get<std::string>();
        entry.category = e.at("category").get<std::string>();
        entry.gender = e.value("gender", "");
        entry.region = e.value("region", "");
      } catch (const json::exception& ex) {
        throw LexiconFormatError(std::string("gazetteer ") + part + " entry " +
                                 std::to_string(n) + ": " + ex.what());
      }
      if (entry.category != "PER" && entry.category != "LOC" &&
          entry.category != "ORG") {
        throw LexiconFormatError("gazetteer entry \"" + entry.name +
                                 "\": unknown category " + entry.category);
      }
      if (entry.category == "PER" && entry.gender != "man" &&
          entry.gender != "woman") {
        throw LexiconFormatError("gazetteer PER entry \"" + entry.name +
                                 "\" lacks a gender");
      }
      auto it = seen.find(entry.name);
      if (it != seen.end()) {
        throw InvariantError("gazetteer name \"" + entry.name +
                             "\" appears twice (" + it->second + ", " +
                             entry.category + ")");
      }
      seen[entry.name] = entry.category;
      entry.tokens = SplitWhitespace(entry.name);
      g.max_tokens_ = std::max(g.max_tokens_, entry.tokens.size());
      out.push_back(std::move(entry));
    }
  };
  read("main", g.main_);
  read("held_out", g.held_out_);
  for (std::size_t i = 0; i < g.main_.size(); ++i) {
    g.main_index_[g.main_[i].name] = i;
  }
  return g;
}

std::vector<std::string> Gazetteer::categories() const {
  std::set<std::string> cats;
  for (const auto& e : main_) cats.insert(e.category);
  return {cats.begin(), cats.end()};
}

std::vector<const GazetteerEntry*> Gazetteer::InCategory(
    std::string_view category, bool held_out) const {
  std::vector<const GazetteerEntry*> out;
  for (const auto& e : held_out ? held_out_ : main_) {
    if (e.category == category) out.push_back(&e);
  }
  return out;
}

std::optional<std::string> Gazetteer::CategoryOf(std::string_view name) const {
  const GazetteerEntry* e = FindMain(name);
  if (e == nullptr) return std::nullopt;
  return e->category;
}

const GazetteerEntry* Gazetteer::FindMain(std::string_view name) const {
  auto it = main_index_.find(std::string(name));
  return it == main_index_.end() ? nullptr : &main_[it->second];
}

std::size_t Gazetteer::LongestMatch(const std::vector<std::string>& tokens,
                                    std::size_t start,
                                    const GazetteerEntry** entry) const {
  for (std::size_t len = std::min(max_tokens_, tokens.size() - start); len > 0;
       --len) {
    std::string name = tokens[start];
    for (std::size_t k = 1; k < len; ++k) name += " " + tokens[start + k];
    if (const GazetteerEntry* e = FindMain(name)) {
      if (entry != nullptr) *entry = e;
      return len;
    }
  }
  return 0;
}

// --- VerbTable ---

VerbTable VerbTable::Parse(std::string_view text) {
  VerbTable t;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.size() != 4) {
      throw LexiconFormatError(
          LineTag(row.line) + ": expected base<TAB>third past gerund participle");
    }
    t.verbs_.push_back({row.key, row.values[0], row.values[1], row.values[2],
                        row.values[3]});
  }
  for (std::size_t i = 0; i < t.verbs_.size(); ++i) {
    const VerbForms& v = t.verbs_[i];
    for (VerbForm f : {VerbForm::kBase, VerbForm::kThird, VerbForm::kPast,
                       VerbForm::kGerund, VerbForm::kParticiple}) {
      t.index_.emplace(Form(v, f), std::make_pair(i, f));
    }
  }
  return t;
}

const std::string& VerbTable::Form(const VerbForms& v, VerbForm f) {
  switch (f) {
    case VerbForm::kBase:
      return v.base;
    case VerbForm::kThird:
      return v.third;
    case VerbForm::kPast:
      return v.past;
    case VerbForm::kGerund:
      return v.gerund;
    case VerbForm::kParticiple:
      return v.participle;
  }
  return v.base;
}

std::vector<std::pair<const VerbForms*, VerbForm>> VerbTable::Lookup(
    std::string_view word) const {
  std::vector<std::pair<const VerbForms*, VerbForm>> out;
  auto [lo, hi] = index_.equal_range(std::string(word));
  for (auto it = lo; it != hi; ++it) {
    out.emplace_back(&verbs_[it->second.first], it->second.second);
  }
  return out;
}

const VerbForms* VerbTable::FindLemma(std::string_view base) const {
  for (const VerbForms& v : verbs_) {
    if (v.base == base) return &v;
  }
  return nullptr;
}

// --- MultiPosTable / PrefixTable ---

MultiPosTable MultiPosTable::Parse(std::string_view text) {
  MultiPosTable t;
  for (const TsvRow& row : ParseTsv(text)) {
    if (row.values.size() < 2) {
      throw InvariantError("\"" + row.key + "\" holds fewer than two POS tags");
    }
    t.map_[row.key] = row.values;
  }
  return t;
}

PrefixTable PrefixTable::Parse(std::string_view prefixes, std::string_view words) {
  PrefixTable t;
  for (const TsvRow& row : ParseTsv(prefixes)) {
    if (row.values.size() != 1 ||
        (row.values[0] != "swap" && row.values[0] != "excluded")) {
      throw LexiconFormatError(LineTag(row.line) + ": expected swap|excluded");
    }
    if (row.values[0] == "swap") {
      t.swappable.push_back(row.key);
    } else {
      t.excluded.insert(row.key);
    }
  }
  for (const std::string& p : t.swappable) {
    if (t.excluded.count(p)) {
      throw InvariantError("prefix \"" + p + "\" both swappable and excluded");
    }
  }
  for (const std::string& w : ParseWordList(words)) t.words.insert(w);
  return t;
}

// --- Resources ---

namespace {

std::string ReadFile(const std::filesystem::path& path, bool required = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!required) return {};
    throw ConfigError("cannot open resource " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the "ErrorName: " prefix so a rethrow does not repeat it.
std::string Untagged(const std::exception& e) {
  const std::string what = e.what();
  const auto colon = what.find(": ");
  return colon == std::string::npos ? what : what.substr(colon + 2);
}

template <typename Fn>
auto WithFile(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn(ReadFile(path));
  } catch (const LexiconFormatError& e) {
    throw LexiconFormatError(path.filename().string() + ": " + Untagged(e));
  } catch (const InvariantError& e) {
    throw InvariantError(path.filename().string() + ": " + Untagged(e));
  } catch (const json::exception& e) {
    throw LexiconFormatError(path.filename().string() + ": " + e.what());
  }
}

std::vector<std::string> JsonStrings(const json& j, const char* key) {
  std::vector<std::string> out;
  for (const json& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

Resources Resources::Load(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::is_directory(root)) {
    throw ConfigError("resource directory " + dir + " does not exist");
  }
  Resources r;
  r.directory = dir;
  r.keyboard = WithFile(root / "keyboard.tsv",
                        [](const std::string& t) { return AdjacencyMap::Parse(t); });
  r.ocr = WithFile(root / "ocr.tsv",
                   [](const std::string& t) { return ConfusionTable::Parse(t); });
  r.error_forms = WithFile(root / "error_forms.tsv", [](const std::string& t) {
    return WordRelation::Parse(t, "misspelling");
  });
  r.contractions = WithFile(root / "contractions.tsv", [](const std::string& t) {
    return ContractionTable::Parse(t);
  });
  r.synonyms = WithFile(root / "synonyms.tsv", [](const std::string& t) {
    return WordRelation::Parse(t, "synonym");
  });
  r.antonyms = WithFile(root / "antonyms.tsv", [](const std::string& t) {
    return WordRelation::Parse(t, "antonym");
  });
  r.gazetteer = WithFile(root / "gazetteer.json",
                         [](const std::string& t) { return Gazetteer::Parse(t); });
  r.sentiment = WithFile(root / "sentiment.tsv", [](const std::string& t) {
    return SentimentLexicon::Parse(t);
  });
  r.acronyms = WithFile(root / "acronyms.tsv",
                        [](const std::string& t) { return AcronymTable::Parse(t); });
  r.verbs = WithFile(root / "verbs.tsv",
                     [](const std::string& t) { return VerbTable::Parse(t); });
  r.multi_pos = WithFile(root / "multipos.tsv",
                         [](const std::string& t) { return MultiPosTable::Parse(t); });
  r.prefixes = PrefixTable::Parse(ReadFile(root / "prefixes.tsv"),
                                  ReadFile(root / "prefix_words.txt"));
  r.adverbs = ParseWordList(ReadFile(root / "adverbs.txt"));
  r.irrelevant_sentences = ParseWordList(ReadFile(root / "irrelevant.txt"));
  r.twitter_handles = ParseWordList(ReadFile(root / "twitter_handles.txt"));
  r.twitter_urls = ParseWordList(ReadFile(root / "twitter_urls.txt"));
  r.negation_words = ParseWordList(ReadFile(root / "negation.txt"));
  r.question_words = ParseWordList(ReadFile(root / "question_words.txt"));

  WithFile(root / "summaries.json", [&](const std::string& t) {
    const json j = json::parse(t);
    for (const auto& [kind, entries] : j.items()) {
      for (const auto& [name, summary] : entries.items()) {
        r.summaries[kind][name] = summary.get<std::string>();
      }
    }
    return 0;
  });
  WithFile(root / "aspect_snippets.tsv", [&](const std::string& t) {
    for (const TsvRow& row : ParseTsv(t)) {
      if (row.values.size() < 2 ||
          (row.values[0] != "positive" && row.values[0] != "negative")) {
        throw LexiconFormatError(LineTag(row.line) +
                                 ": expected <positive|negative> clause");
      }
      r.aspect_snippets.push_back(
          {row.key, row.values[0], {row.values.begin() + 1, row.values.end()}});
    }
    return 0;
  });
  WithFile(root / "overlap.json", [&](const std::string& t) {
    const json j = json::parse(t);
    r.overlap.nouns = JsonStrings(j, "nouns");
    r.overlap.clause_verbs = JsonStrings(j, "clause_verbs");
    r.overlap.transitive_verbs = JsonStrings(j, "transitive_verbs");
    r.overlap.intransitive_verbs = JsonStrings(j, "intransitive_verbs");
    r.overlap.prepositions = JsonStrings(j, "prepositions");
    return 0;
  });
  WithFile(root / "keywords.json", [&](const std::string& t) {
    const json j = json::parse(t);
    for (const auto& [label, words] : j.items()) {
      r.keywords[label] = words.get<std::vector<std::string>>();
    }
    return 0;
  });
  const std::string human = ReadFile(root / "human_eval.json", false);
  if (!human.empty()) {
    const json j = json::parse(human);
    for (const auto& [transform, metrics] : j.items()) {
      for (const auto& [metric, value] : metrics.items()) {
        r.human_eval[transform][metric] = value.get<double>();
      }
    }
  }
  return r;
}

std::string DefaultResourceDir() { return FLINT_RESOURCE_DIR; }

const Resources& DefaultResources() {
  static const Resources* resources =
      new Resources(Resources::Load(DefaultResourceDir()));
  return *resources;
}

}  // namespace flint
