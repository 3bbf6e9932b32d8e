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

// Tokens, text fields and the rule tokenizer.
//
// Tokenization splits on whitespace and then peels leading and trailing
// punctuation off each chunk, one character per token. Characters inside a
// word ("don't", "3.5") are never split.
//
// Rendering a token list back to text joins tokens with a single space,
// except that no space is emitted before the closing punctuation set
// {. , ! ? ; : ' ’ )} and none after "(".

#ifndef FLINT_TEXT_H_
#define FLINT_TEXT_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flint {

struct Token {
  std::string text;
  // Byte offsets into the owning field's raw text, half-open.
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::size_t index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

std::vector<Token> Tokenize(std::string_view raw);

// Renders token texts with the spacing rule above.
std::string Detokenize(const std::vector<std::string>& tokens);

// Collapses whitespace runs and applies the punctuation spacing rule to
// already well-formed text. Defined without reference to Tokenize.
std::string NormalizeWhitespace(std::string_view text);

// True if no space is emitted before `token`.
bool AttachesLeft(std::string_view token);
// True if no space is emitted after `token`.
bool AttachesRight(std::string_view token);

class TextField {
 public:
  TextField() = default;

  // Tokenizes `raw`; offsets index into `raw`.
  static TextField FromRaw(std::string raw);
  // Builds raw text by rendering `tokens`. Throws BoundsError on empty or
  // whitespace-bearing tokens.
  static TextField FromTokens(const std::vector<std::string>& tokens);

  const std::string& raw() const { return raw_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(std::size_t i) const { return tokens_[i].text; }
  std::vector<std::string> texts() const;

  const std::set<std::size_t>& frozen() const { return frozen_; }
  bool is_frozen(std::size_t i) const { return frozen_.count(i) > 0; }
  // Throws BoundsError if any index is out of range.
  void set_frozen(std::set<std::size_t> frozen);

  friend bool operator==(const TextField&, const TextField&) = default;

 private:
  std::string raw_;
  std::vector<Token> tokens_;
  std::set<std::size_t> frozen_;
};

// ASCII helpers shared by the transformations.
std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);
bool IsAlphaWord(std::string_view s);
bool IsNumeral(std::string_view s);
bool IsPunctuation(std::string_view s);
bool IsCapitalized(std::string_view s);
// Copies the capitalization pattern of `model` (all-caps or leading capital)
// onto `word`.
std::string MatchCase(std::string_view model, std::string_view word);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

// Decodes UTF-8 into code points; invalid bytes decode as U+FFFD.
std::u32string DecodeUtf8(std::string_view s);

}  // namespace flint

#endif  // FLINT_TEXT_H_
