// Copyright 2026 The scriptnorm Authors
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

#pragma once

#include <string>
#include <string_view>

namespace scriptnorm {

inline constexpr char32_t kZwnj = U'‌';

// Strict UTF-8 decode. Rejects overlong forms, surrogates, values past
// U+10FFFF and truncated sequences; the error message carries the byte
// offset of the offending sequence.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view cps);
std::string encode_utf8(char32_t cp);

// "U+0627" / "U+0627+U+064F" rendering used by inventory and rule files.
std::string codepoint_label(char32_t cp);
std::string codepoint_label(std::u32string_view cps);

bool is_space_cp(char32_t cp);        // ASCII whitespace + NBSP
bool is_ascii_digit(char32_t cp);
bool is_eastern_arabic_digit(char32_t cp);  // U+0660..U+0669
bool is_farsi_digit(char32_t cp);           // U+06F0..U+06F9
bool is_any_digit(char32_t cp);

// Token-boundary punctuation: ASCII punctuation plus the Perso-Arabic marks
// ، ؛ ؟ ۔ and the guillemets used in Persian text.
bool is_punct_cp(char32_t cp);

// Sentence terminators: . ! ? ؟ ۔
bool is_sentence_terminator(char32_t cp);

// Script-block membership used by the corpus cleaner's script filter.
bool is_latin_letter(char32_t cp);
bool is_cyrillic(char32_t cp);
bool is_devanagari(char32_t cp);

}  // namespace scriptnorm
