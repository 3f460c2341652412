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

#ifndef MRCEVAL_UNICODE_HPP_
#define MRCEVAL_UNICODE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace mrceval::unicode {

/// Decodes UTF-8 into Unicode scalar values. Invalid byte sequences are
/// replaced with U+FFFD, one replacement per rejected sequence.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view codepoints);

/// Number of Unicode scalar values in a UTF-8 string. All character
/// counts in this library (answer offsets, paragraph lengths) use this.
std::size_t scalar_count(std::string_view text);

/// Canonical composition (NFC).
std::u32string nfc(std::u32string_view codepoints);

/// White_Space property.
bool is_whitespace(char32_t cp);

/// General category Nd.
bool is_decimal_digit(char32_t cp);

/// General categories P*.
bool is_punctuation(char32_t cp);

/// Hebrew block, U+0590..U+05FF (letters and points).
inline bool is_hebrew(char32_t cp) { return cp >= 0x0590 && cp <= 0x05FF; }

/// Simple (1:1) lowercase mapping; codepoints without one pass through.
char32_t to_lower_simple(char32_t cp);

}  // namespace mrceval::unicode

#endif  // MRCEVAL_UNICODE_HPP_
