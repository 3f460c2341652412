// Copyright 2026 The mrceval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrceval/textnorm.hpp"

#include <algorithm>

#include "mrceval/unicode.hpp"

namespace mrceval {

namespace {

bool is_english_article(std::u32string_view token) {
  auto eq = [&](std::u32string_view word) {
    if (token.size() != word.size()) return false;
    for (std::size_t i = 0; i < token.size(); ++i) {
      if (unicode::to_lower_simple(token[i]) != word[i]) return false;
    }
    return true;
  };
  return eq(U"a") || eq(U"an") || eq(U"the");
}

// Drops article tokens, keeping the surrounding whitespace runs as-is;
// the collapse step (when enabled) squeezes the leftover gaps.
std::u32string remove_articles(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (unicode::is_whitespace(text[i])) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !unicode::is_whitespace(text[i])) ++i;
    std::u32string_view token(text.data() + start, i - start);
    if (!is_english_article(token)) out.append(token);
  }
  return out;
}

std::u32string collapse_whitespace(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && unicode::is_whitespace(text[i])) ++i;
    if (i >= text.size()) break;
    if (!out.empty()) out.push_back(U' ');
    while (i < text.size() && !unicode::is_whitespace(text[i])) {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::optional<NormalizationProfile> NormalizationProfile::by_name(
    std::string_view name) {
  if (name == "hebrew-default") return hebrew_default();
  if (name == "english-squad") return english_squad();
  if (name == "none") return none();
  return std::nullopt;
}

std::string normalize(std::string_view text, const NormalizationProfile& profile) {
  std::u32string cps = unicode::decode_utf8(text);
  if (profile.unicode_nfc) cps = unicode::nfc(cps);
  if (profile.lowercase) {
    std::transform(cps.begin(), cps.end(), cps.begin(),
                   unicode::to_lower_simple);
  }
  if (profile.strip_punctuation) {
    std::erase_if(cps, unicode::is_punctuation);
  }
  if (profile.remove_english_articles) cps = remove_articles(cps);
  if (profile.collapse_whitespace) cps = collapse_whitespace(cps);
  if (profile.unicode_nfc) {
    // Removals above can bring a base and a combining mark together;
    // recompose so the output is canonically composed (and idempotent).
    cps = unicode::nfc(cps);
  }
  return unicode::encode_utf8(cps);
}

TokenSpan tokenize(std::string_view text, const NormalizationProfile& profile) {
  TokenSpan span;
  span.raw.assign(text);
  std::u32string cps = unicode::decode_utf8(normalize(text, profile));
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && unicode::is_whitespace(cps[i])) ++i;
    if (i >= cps.size()) break;
    std::size_t start = i;
    while (i < cps.size() && !unicode::is_whitespace(cps[i])) ++i;
    span.tokens.push_back(
        unicode::encode_utf8(std::u32string_view(cps.data() + start, i - start)));
  }
  return span;
}

double digit_fraction(std::string_view span) {
  std::size_t digits = 0;
  std::size_t non_ws = 0;
  for (char32_t cp : unicode::decode_utf8(span)) {
    if (unicode::is_whitespace(cp)) continue;
    ++non_ws;
    if (unicode::is_decimal_digit(cp)) ++digits;
  }
  if (non_ws == 0) return 0.0;
  return static_cast<double>(digits) / static_cast<double>(non_ws);
}

std::size_t hebrew_char_count(std::string_view text) {
  std::size_t n = 0;
  for (char32_t cp : unicode::decode_utf8(text)) {
    if (unicode::is_hebrew(cp)) ++n;
  }
  return n;
}

}  // namespace mrceval
