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

#include <set>
#include <string>
#include <vector>

namespace scriptnorm {

// A grapheme is one or two code points (two for compound characters such as
// a hamza carrier fused with a vowel letter, or aspirate digraphs).
using Grapheme = std::u32string;

extern const std::vector<std::string> kLanguageCodes;  // ISO 639-3

bool is_known_language(const std::string& code);

// Character stock of one language's written form: the grapheme set, which of
// those graphemes are optional vocalization marks, whether the orthography
// uses ZWNJ, and whether vowels are systematically written.
struct ScriptInventory {
  enum class Kind { kAbjad, kAlphabet };

  std::string lang;
  std::set<Grapheme> chars;
  std::set<Grapheme> diacritics;  // subset of chars
  bool uses_zwnj = false;
  Kind kind = Kind::kAbjad;

  bool contains(const Grapheme& g) const { return chars.count(g) > 0; }
  bool is_diacritic(const Grapheme& g) const { return diacritics.count(g) > 0; }

  // Longest-match segmentation of a code-point sequence into graphemes:
  // two-code-point inventory members win over single code points; anything
  // unknown becomes a single-code-point grapheme of its own.
  std::vector<Grapheme> segment(const std::u32string& word) const;
};

// File format: UTF-8, line-oriented, `#` comments, TAB-separated fields.
//   lang<TAB>ckb
//   script<TAB>alphabet|abjad
//   zwnj<TAB>true|false
//   char<TAB>U+0627            (or U+0626+U+06C6 for a compound)
//   diacritic<TAB>U+064E       (declares the char AND marks it a diacritic)
// Rejects malformed U+ tokens, duplicate graphemes and unknown language
// codes, always with the offending line number.
ScriptInventory load_inventory(const std::string& path);

enum class RulePosition { kAnywhere, kWordInitial, kWordFinal };

// One contextual replacement: a source grapheme sequence (1-2 graphemes)
// and the alternatives it may surface as in the dominant script. An empty
// target means deletion.
struct MappingRule {
  std::vector<Grapheme> source;
  std::vector<std::vector<Grapheme>> targets;
  RulePosition position = RulePosition::kAnywhere;
};

struct MappingRuleSet {
  std::string src_lang;
  std::string dom_lang;
  std::vector<MappingRule> rules;
};

// Rule file format: `<source>\t<position>\t<target1>[|<target2>...]` where
// source/targets are space-separated grapheme tokens (`U+XXXX` or
// `U+XXXX+U+YYYY`), position is anywhere|word_initial|word_final, and a
// target of `∅` is the empty (deletion) target. Validates every source
// grapheme against the source inventory and every target grapheme against
// the dominant inventory; duplicate targets within a rule and duplicate
// (source, position) rows are rejected.
MappingRuleSet compile_rules(const std::string& path,
                             const ScriptInventory& src,
                             const ScriptInventory& dom);

// Script proximity on [0, 1]:
//   (|M| / |A∪B|) * (|M| / |A∩B|)
// where M is the set of shared characters mapped by exactly one rule whose
// single target is the character itself. A pair of scripts with an empty
// intersection scores 0.
double script_ratio(const MappingRuleSet& rules, const ScriptInventory& a,
                    const ScriptInventory& b);

}  // namespace scriptnorm
