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

#ifndef MRCEVAL_TEXTNORM_HPP_
#define MRCEVAL_TEXTNORM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrceval {

/// Value object describing how answer strings are normalized before
/// scoring. Two equal profiles normalize identically.
///
/// Normalization applies its steps in a fixed order:
///   canonical composition -> lowercase -> punctuation strip
///   -> English article removal -> whitespace collapse/trim.
struct NormalizationProfile {
  /// Apply Unicode canonical composition (NFC).
  bool unicode_nfc = true;
  /// Collapse runs of whitespace to single spaces and trim the ends.
  bool collapse_whitespace = true;
  /// Drop all codepoints in general categories P*.
  bool strip_punctuation = true;
  /// Simple lowercase; only affects cased scripts embedded in the text
  /// (Latin brand names and the like), Hebrew has no case.
  bool lowercase = true;
  /// Drop whitespace-delimited tokens equal to "a", "an" or "the".
  /// An English-oriented fixup; off in the Hebrew default profile.
  bool remove_english_articles = false;

  bool operator==(const NormalizationProfile&) const = default;

  static NormalizationProfile hebrew_default() { return {}; }

  static NormalizationProfile english_squad() {
    NormalizationProfile p;
    p.remove_english_articles = true;
    return p;
  }

  /// Identity normalization; tokenize still splits on whitespace.
  static NormalizationProfile none() {
    return {.unicode_nfc = false,
            .collapse_whitespace = false,
            .strip_punctuation = false,
            .lowercase = false,
            .remove_english_articles = false};
  }

  /// Profile by CLI name: "hebrew-default", "english-squad" or "none".
  static std::optional<NormalizationProfile> by_name(std::string_view name);
};

/// A normalized answer span: the original string plus its whitespace
/// tokens. Tokens are maximal runs of non-whitespace in the normalized
/// text; none is empty, and tokens may repeat.
struct TokenSpan {
  std::string raw;
  std::vector<std::string> tokens;

  bool operator==(const TokenSpan&) const = default;
};

/// Applies the profile's steps in the fixed order above. Total and
/// idempotent: normalize(normalize(x)) == normalize(x).
std::string normalize(std::string_view text, const NormalizationProfile& profile);

/// Whitespace tokenization of the normalized text. Empty input yields an
/// empty token list.
TokenSpan tokenize(std::string_view text, const NormalizationProfile& profile);

/// Decimal digits (Nd) divided by non-whitespace scalar values; 0 for a
/// span with no non-whitespace content. Whitespace never counts toward
/// the denominator, so trimming does not change the value.
double digit_fraction(std::string_view span);

/// Scalar values inside the Hebrew block U+0590..U+05FF.
std::size_t hebrew_char_count(std::string_view text);

}  // namespace mrceval

#endif  // MRCEVAL_TEXTNORM_HPP_
