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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scriptnorm/inventory.hpp"

namespace scriptnorm {

struct CleanConfig {
  bool strip_urls_emails_dates = true;
  bool unify_numerals = true;
  // Must stay false for languages whose orthography uses ZWNJ; clean_text
  // rejects the combination.
  bool strip_zwnj = false;
  bool keep_only_perso_arabic = true;
};

// Audit side channel: everything the cleaner removed, and how often.
struct CleanLog {
  uint64_t urls = 0;
  uint64_t emails = 0;
  uint64_t dates = 0;
  uint64_t zwnj = 0;
  std::map<char32_t, uint64_t> stripped;  // code point -> removal count

  void merge(const CleanLog& other);
  uint64_t total_stripped() const;
};

// Cleans one document (or line): drops URL / email / numeric-date tokens,
// maps Eastern Arabic and Farsi digits onto ASCII, optionally strips ZWNJ,
// filters out code points foreign to the inventory (plus digits,
// punctuation, whitespace), and collapses whitespace runs. Newlines survive
// as single '\n' so line structure is preserved for sentence extraction.
// Idempotent: clean_text(clean_text(x)) == clean_text(x).
std::string clean_text(const std::string& raw, const CleanConfig& cfg,
                       const ScriptInventory& inv, CleanLog* log = nullptr);

// Whitespace split with punctuation detached into single-character tokens.
// ZWNJ is a joining control, not punctuation, and stays inside its token.
std::vector<std::string> tokenize(const std::string& text);

// Splits on sentence terminators (. ! ? ؟ ۔) and newlines, drops the
// terminator, and keeps only sentences whose token count lies in
// [min_tokens, max_tokens].
std::vector<std::string> extract_sentences(const std::string& corpus,
                                           size_t min_tokens = 5,
                                           size_t max_tokens = 20);

struct Vocabulary {
  std::map<std::string, uint64_t> entries;  // word -> frequency
  int min_freq = 3;

  bool contains(const std::string& word) const {
    return entries.count(word) > 0;
  }
};

// Token counts over tokenize(corpus), thresholded at min_freq.
// min_freq outside [3, 10] is a configuration error.
Vocabulary build_vocabulary(const std::string& corpus, int min_freq);

// TSV `word<TAB>count`, sorted by descending count, then code-point order.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

// Word set from either a word-per-line file or a vocabulary TSV (first
// field of each line).
std::set<std::string> load_lexicon(const std::string& path);

}  // namespace scriptnorm
