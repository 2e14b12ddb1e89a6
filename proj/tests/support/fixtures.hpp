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

#include <map>
#include <string>
#include <vector>

#include "scriptnorm/alignment.hpp"
#include "scriptnorm/inventory.hpp"
#include "scriptnorm/langid.hpp"

namespace scriptnorm::testing {

// Path of a file shipped in the repository (inventories, rules).
std::string repo_path(const std::string& relative);

ScriptInventory repo_inventory(const std::string& code);
MappingRuleSet repo_rules(const std::string& src, const std::string& dom);

// The rule-only replacement matrix of a shipped language pair.
CharAlignmentMatrix repo_rule_matrix(const std::string& src,
                                     const std::string& dom);

// Unique writable directory, removed (recursively) on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const;

 private:
  std::string path_;
};

// Splits a code-point string into one-code-point graphemes.
std::vector<Grapheme> split_letters(const std::u32string& cps);

// Twelve letters mapped 1:1 onto twelve letters that occur nowhere in the
// source texts, every entry rule-style (score 1.0): noise injected with this
// matrix is exactly invertible.
CharAlignmentMatrix bijective_matrix();
std::vector<Grapheme> bijective_alphabet();  // the 12 source letters

// Eight sources with two or three competing targets each; several targets
// are claimed by more than one source, so inverting a replacement is
// genuinely ambiguous. The alphabet has two extra letters no rule touches.
CharAlignmentMatrix many_alternative_matrix();
std::vector<Grapheme> many_alternative_alphabet();

// Deterministic pseudo-text: a vocabulary of `vocab_size` words of 2-7
// letters over `alphabet` with a frequency bias towards low word indices,
// sentences of 5-12 words.
std::vector<std::string> synthetic_sentences(
    size_t n_sentences, uint64_t seed, const std::vector<Grapheme>& alphabet,
    size_t vocab_size = 120);

// Eleven-label corpus for the language-identification tests. Every label
// gets `clean_per_label` clean sentences over its own inventory letters;
// the eight languages with a shipped rule file towards a dominant script
// also get the all-levels union of noisy versions. The groups {azb,glk,mzn}
// and {ckb,kmr,hac} share a pool of high-frequency function words, so their
// members genuinely resemble each other.
std::map<std::string, LabelData> langid_desk_corpus(size_t clean_per_label,
                                                    uint64_t seed);

}  // namespace scriptnorm::testing
