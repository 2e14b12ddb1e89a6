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

#include "scriptnorm/corpus.hpp"

#include <algorithm>

#include "scriptnorm/error.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

void CleanLog::merge(const CleanLog& other) {
  urls += other.urls;
  emails += other.emails;
  dates += other.dates;
  zwnj += other.zwnj;
  for (const auto& [cp, n] : other.stripped) stripped[cp] += n;
}

uint64_t CleanLog::total_stripped() const {
  uint64_t total = 0;
  for (const auto& [cp, n] : stripped) total += n;
  return total;
}

namespace {

bool starts_with(const std::u32string& s, std::u32string_view prefix) {
  return s.size() >= prefix.size() &&
         s.compare(0, prefix.size(), prefix) == 0;
}

bool looks_like_url(const std::u32string& token) {
  return token.find(U"://") != std::u32string::npos ||
         starts_with(token, U"www.");
}

bool looks_like_email(const std::u32string& token) {
  const size_t at = token.find(U'@');
  if (at == std::u32string::npos || at == 0 || at + 1 >= token.size()) {
    return false;
  }
  if (token.find(U'@', at + 1) != std::u32string::npos) return false;
  const size_t dot = token.find(U'.', at + 1);
  return dot != std::u32string::npos && dot > at + 1 && dot + 1 < token.size();
}

// Numeric date: exactly three digit groups (1-4 digits each, any digit
// system) joined by one consistent separator out of / - . such as
// 2022/12/01 or ۲۰۲۲/۱۲/۰۱. Two-group tokens like 12.5 are numbers, not
// dates, and prose dates are content; both stay.
bool looks_like_date(const std::u32string& token) {
  char32_t sep = 0;
  size_t groups = 0;
  size_t digits_in_group = 0;
  for (const char32_t cp : token) {
    if (is_any_digit(cp)) {
      ++digits_in_group;
      if (digits_in_group > 4) return false;
      continue;
    }
    if (cp == U'/' || cp == U'-' || cp == U'.') {
      if (digits_in_group == 0) return false;  // separator without a group
      if (sep == 0) {
        sep = cp;
      } else if (cp != sep) {
        return false;
      }
      ++groups;
      digits_in_group = 0;
      continue;
    }
    return false;  // anything else disqualifies the token
  }
  return groups == 2 && digits_in_group > 0;  // 3 groups, 2 separators
}

// Removes URL / email / date tokens. A token is tested with any leading and
// trailing punctuation peeled off, so "(https://x.y)." loses only the URL;
// the punctuation survives for the tokenizer.
std::u32string drop_removable_tokens(const std::u32string& text,
                                     CleanLog* log) {
  std::u32string out;
  size_t i = 0;
  while (i < text.size()) {
    if (is_space_cp(text[i])) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    size_t end = i;
    while (end < text.size() && !is_space_cp(text[end])) ++end;
    const std::u32string chunk = text.substr(i, end - i);

    size_t lo = 0;
    size_t hi = chunk.size();
    while (lo < hi && is_punct_cp(chunk[lo])) ++lo;
    while (hi > lo && is_punct_cp(chunk[hi - 1])) --hi;
    const std::u32string core = chunk.substr(lo, hi - lo);

    bool drop_core = false;
    if (!core.empty()) {
      if (looks_like_url(core)) {
        drop_core = true;
        if (log) ++log->urls;
      } else if (looks_like_email(core)) {
        drop_core = true;
        if (log) ++log->emails;
      } else if (looks_like_date(core)) {
        drop_core = true;
        if (log) ++log->dates;
      }
    }
    if (drop_core) {
      out.append(chunk, 0, lo);
      out.append(chunk, hi, chunk.size() - hi);
    } else {
      out.append(chunk);
    }
    i = end;
  }
  return out;
}

char32_t unify_digit(char32_t cp) {
  if (is_eastern_arabic_digit(cp)) return U'0' + (cp - 0x0660);
  if (is_farsi_digit(cp)) return U'0' + (cp - 0x06F0);
  return cp;
}

// Whitespace runs collapse to a single space — or a single newline when the
// run contains one, so document line structure survives cleaning.
std::u32string collapse_whitespace(const std::u32string& text) {
  std::u32string out;
  size_t i = 0;
  while (i < text.size()) {
    if (!is_space_cp(text[i])) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    bool has_newline = false;
    while (i < text.size() && is_space_cp(text[i])) {
      if (text[i] == U'\n') has_newline = true;
      ++i;
    }
    if (!out.empty() && i < text.size()) {
      out.push_back(has_newline ? U'\n' : U' ');
    }
  }
  return out;
}

}  // namespace

std::string clean_text(const std::string& raw, const CleanConfig& cfg,
                       const ScriptInventory& inv, CleanLog* log) {
  if (cfg.strip_zwnj && inv.uses_zwnj) {
    throw Error("strip_zwnj is invalid for " + inv.lang +
                ": its orthography uses ZWNJ");
  }

  std::u32string text = decode_utf8(raw);

  if (cfg.strip_urls_emails_dates) {
    text = drop_removable_tokens(text, log);
  }

  std::u32string filtered;
  filtered.reserve(text.size());
  std::set<char32_t> allowed;
  if (cfg.keep_only_perso_arabic) {
    for (const auto& g : inv.chars) {
      for (const char32_t cp : g) allowed.insert(cp);
    }
  }
  for (char32_t cp : text) {
    if (cfg.unify_numerals) cp = unify_digit(cp);
    if (cp == kZwnj && cfg.strip_zwnj) {
      if (log) ++log->zwnj;
      continue;
    }
    if (cfg.keep_only_perso_arabic) {
      const bool keep = allowed.count(cp) > 0 || is_any_digit(cp) ||
                        is_punct_cp(cp) || is_space_cp(cp) || cp == kZwnj;
      if (!keep) {
        if (log) ++log->stripped[cp];
        continue;
      }
    }
    filtered.push_back(cp);
  }

  // The script filter can expose new removable tokens (a date glued to
  // stripped letters, say); a second pass keeps cleaning idempotent.
  if (cfg.strip_urls_emails_dates) {
    filtered = drop_removable_tokens(filtered, nullptr);
  }

  return encode_utf8(collapse_whitespace(filtered));
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  const std::u32string cps = decode_utf8(text);
  std::u32string current;
  const auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(encode_utf8(current));
      current.clear();
    }
  };
  for (const char32_t cp : cps) {
    if (is_space_cp(cp)) {
      flush();
    } else if (is_punct_cp(cp)) {
      flush();
      tokens.push_back(encode_utf8(cp));
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> extract_sentences(const std::string& corpus,
                                           size_t min_tokens,
                                           size_t max_tokens) {
  std::vector<std::string> sentences;
  const std::u32string cps = decode_utf8(corpus);
  std::u32string current;
  const auto flush = [&] {
    const std::string sentence = trim(encode_utf8(current));
    current.clear();
    if (sentence.empty()) return;
    const size_t n = tokenize(sentence).size();
    if (n >= min_tokens && n <= max_tokens) sentences.push_back(sentence);
  };
  for (const char32_t cp : cps) {
    if (is_sentence_terminator(cp) || cp == U'\n') {
      flush();
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return sentences;
}

Vocabulary build_vocabulary(const std::string& corpus, int min_freq) {
  if (min_freq < 3 || min_freq > 10) {
    throw Error("min_freq must lie in [3, 10], got " +
                std::to_string(min_freq));
  }
  std::map<std::string, uint64_t> counts;
  for (const auto& token : tokenize(corpus)) ++counts[token];

  Vocabulary vocab;
  vocab.min_freq = min_freq;
  for (const auto& [word, count] : counts) {
    if (count >= static_cast<uint64_t>(min_freq)) {
      vocab.entries.emplace(word, count);
    }
  }
  return vocab;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::vector<std::pair<std::string, uint64_t>> rows(vocab.entries.begin(),
                                                     vocab.entries.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;  // code-point order == UTF-8 byte order
  });
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const auto& [word, count] : rows) {
    lines.push_back(word + "\t" + std::to_string(count));
  }
  write_lines(path, lines);
}

Vocabulary load_vocabulary(const std::string& path) {
  Vocabulary vocab;
  uint64_t min_seen = 0;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    if (lines[idx].empty()) continue;
    const auto fields = split_tsv(lines[idx]);
    if (fields.size() != 2) {
      throw ParseError(path, idx + 1, "expected `word<TAB>count`");
    }
    uint64_t count = 0;
    try {
      count = std::stoull(fields[1]);
    } catch (const std::exception&) {
      throw ParseError(path, idx + 1, "bad count `" + fields[1] + "`");
    }
    if (!vocab.entries.emplace(fields[0], count).second) {
      throw ParseError(path, idx + 1, "duplicate word `" + fields[0] + "`");
    }
    min_seen = (min_seen == 0) ? count : std::min(min_seen, count);
  }
  if (min_seen > 0) {
    vocab.min_freq = static_cast<int>(
        std::clamp<uint64_t>(min_seen, 3, 10));
  }
  return vocab;
}

std::set<std::string> load_lexicon(const std::string& path) {
  std::set<std::string> words;
  for (const auto& line : read_lines(path)) {
    const auto fields = split_tsv(line);
    const std::string word = trim(fields.empty() ? "" : fields[0]);
    if (!word.empty()) words.insert(word);
  }
  return words;
}

}  // namespace scriptnorm
