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

#include "scriptnorm/unicode.hpp"

#include <cstdio>

#include "scriptnorm/error.hpp"

namespace scriptnorm {

namespace {

[[noreturn]] void bad_utf8(size_t offset, const char* what) {
  throw Error("invalid UTF-8 at byte offset " + std::to_string(offset) + ": " +
              what);
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  size_t i = 0;
  const size_t n = bytes.size();
  while (i < n) {
    const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
    char32_t cp = 0;
    size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      bad_utf8(i, "invalid lead byte");
    }
    if (i + len > n) bad_utf8(i, "truncated sequence");
    for (size_t k = 1; k < len; ++k) {
      const unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
      if ((bk & 0xC0) != 0x80) bad_utf8(i, "invalid continuation byte");
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Overlong forms and out-of-range values.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000)) {
      bad_utf8(i, "overlong encoding");
    }
    if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(i, "surrogate code point");
    if (cp > 0x10FFFF) bad_utf8(i, "code point past U+10FFFF");
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) out += encode_utf8(cp);
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

std::string codepoint_label(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

std::string codepoint_label(std::u32string_view cps) {
  std::string out;
  for (size_t i = 0; i < cps.size(); ++i) {
    if (i) out += '+';
    out += codepoint_label(cps[i]);
  }
  return out;
}

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == U' ';
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_eastern_arabic_digit(char32_t cp) {
  return cp >= U'٠' && cp <= U'٩';
}

bool is_farsi_digit(char32_t cp) { return cp >= U'۰' && cp <= U'۹'; }

bool is_any_digit(char32_t cp) {
  return is_ascii_digit(cp) || is_eastern_arabic_digit(cp) ||
         is_farsi_digit(cp);
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
           (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
  }
  switch (cp) {
    case U'،':  // ،
    case U'؛':  // ؛
    case U'؟':  // ؟
    case U'۔':  // ۔
    case U'«':  // «
    case U'»':  // »
    case U'…':  // …
      return true;
    default:
      return false;
  }
}

bool is_sentence_terminator(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == U'؟' ||
         cp == U'۔';
}

bool is_latin_letter(char32_t cp) {
  return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') ||
         (cp >= 0x00C0 && cp <= 0x024F) ||  // Latin-1 supplement + extended
         (cp >= 0x1E00 && cp <= 0x1EFF);
}

bool is_cyrillic(char32_t cp) { return cp >= 0x0400 && cp <= 0x04FF; }

bool is_devanagari(char32_t cp) { return cp >= 0x0900 && cp <= 0x097F; }

}  // namespace scriptnorm
