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

#include "flint/text.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "flint/error.h"

namespace flint {

namespace {

// Punctuation peeled off chunk edges. Multi-byte entries are UTF-8 quotes.
constexpr std::array<std::string_view, 18> kStripPunct = {
    ".", ",", "!", "?", ";", ":", "\"", "'", "(", ")",
    "[", "]", "{", "}", "’", "‘", "“", "”"};

constexpr std::array<std::string_view, 9> kNoSpaceBefore = {
    ".", ",", "!", "?", ";", ":", "'", "’", ")"};

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::size_t LeadingPunctLength(std::string_view s) {
  for (std::string_view p : kStripPunct) {
    if (s.size() >= p.size() && s.substr(0, p.size()) == p) return p.size();
  }
  return 0;
}

std::size_t TrailingPunctLength(std::string_view s) {
  for (std::string_view p : kStripPunct) {
    if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) {
      return p.size();
    }
  }
  return 0;
}

struct Rendered {
  std::string raw;
  std::vector<Token> tokens;
};

Rendered Render(const std::vector<std::string>& texts) {
  Rendered out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i > 0 && !AttachesLeft(texts[i]) && !AttachesRight(texts[i - 1])) {
      out.raw.push_back(' ');
    }
    Token token;
    token.text = texts[i];
    token.char_start = out.raw.size();
    out.raw += texts[i];
    token.char_end = out.raw.size();
    token.index = i;
    out.tokens.push_back(std::move(token));
  }
  return out;
}

}  // namespace

bool AttachesLeft(std::string_view token) {
  return std::find(kNoSpaceBefore.begin(), kNoSpaceBefore.end(), token) !=
         kNoSpaceBefore.end();
}

bool AttachesRight(std::string_view token) { return token == "("; }

std::vector<Token> Tokenize(std::string_view raw) {
  std::vector<Token> tokens;
  auto emit = [&](std::size_t start, std::size_t end) {
    Token t;
    t.text = std::string(raw.substr(start, end - start));
    t.char_start = start;
    t.char_end = end;
    t.index = tokens.size();
    tokens.push_back(std::move(t));
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && IsSpace(raw[pos])) ++pos;
    if (pos >= raw.size()) break;
    std::size_t end = pos;
    while (end < raw.size() && !IsSpace(raw[end])) ++end;

    std::size_t begin = pos;
    while (begin < end) {
      const std::size_t n = LeadingPunctLength(raw.substr(begin, end - begin));
      if (n == 0) break;
      emit(begin, begin + n);
      begin += n;
    }
    std::vector<std::pair<std::size_t, std::size_t>> trailing;
    std::size_t stop = end;
    while (stop > begin) {
      const std::size_t n = TrailingPunctLength(raw.substr(begin, stop - begin));
      if (n == 0) break;
      trailing.emplace_back(stop - n, stop);
      stop -= n;
    }
    if (stop > begin) emit(begin, stop);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      emit(it->first, it->second);
    }
    pos = end;
  }
  return tokens;
}

std::string Detokenize(const std::vector<std::string>& tokens) {
  return Render(tokens).raw;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::vector<std::string> chunks = SplitWhitespace(text);
  std::string out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i > 0) {
      const std::string& cur = chunks[i];
      const std::string& prev = chunks[i - 1];
      bool glue = false;
      for (std::string_view p : kNoSpaceBefore) {
        if (cur == p) glue = true;
      }
      if (prev == "(") glue = true;
      if (!glue) out.push_back(' ');
    }
    out += chunks[i];
  }
  return out;
}

TextField TextField::FromRaw(std::string raw) {
  TextField field;
  field.tokens_ = Tokenize(raw);
  field.raw_ = std::move(raw);
  return field;
}

TextField TextField::FromTokens(const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.empty() ||
        std::any_of(t.begin(), t.end(), [](char c) { return IsSpace(c); })) {
      throw BoundsError("token " + std::to_string(i) +
                        " is empty or contains whitespace");
    }
  }
  Rendered r = Render(tokens);
  TextField field;
  field.raw_ = std::move(r.raw);
  field.tokens_ = std::move(r.tokens);
  return field;
}

std::vector<std::string> TextField::texts() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(t.text);
  return out;
}

void TextField::set_frozen(std::set<std::size_t> frozen) {
  if (!frozen.empty() && *frozen.rbegin() >= tokens_.size()) {
    throw BoundsError("frozen index " + std::to_string(*frozen.rbegin()) +
                      " outside field of " + std::to_string(tokens_.size()) +
                      " tokens");
  }
  frozen_ = std::move(frozen);
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool IsAlphaWord(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
}

bool IsNumeral(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

bool IsPunctuation(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

bool IsCapitalized(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) != 0;
}

std::string MatchCase(std::string_view model, std::string_view word) {
  if (model.size() > 1 && IsAlphaWord(model) && ToUpper(model) == model) {
    return ToUpper(word);
  }
  std::string out(word);
  if (IsCapitalized(model) && !out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && IsSpace(s[pos])) ++pos;
    std::size_t end = pos;
    while (end < s.size() && !IsSpace(s[end])) ++end;
    if (end > pos) out.emplace_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      cp = b & 0x1F;
      extra = 1;
    } else if ((b & 0xF0) == 0xE0) {
      cp = b & 0x0F;
      extra = 2;
    } else if ((b & 0xF8) == 0xF0) {
      cp = b & 0x07;
      extra = 3;
    } else {
      out.push_back(U'�');
      ++i;
      continue;
    }
    if (i + extra >= s.size()) {
      out.push_back(U'�');
      break;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      const auto c = static_cast<unsigned char>(s[i + k]);
      if ((c & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

}  // namespace flint
