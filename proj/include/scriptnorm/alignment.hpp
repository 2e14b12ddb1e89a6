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

#include "scriptnorm/corpus.hpp"
#include "scriptnorm/inventory.hpp"

namespace scriptnorm {

struct AlignmentParams {
  int match = 1;
  int mismatch = -1;
  int gap = -1;
};

// One traceback column. An empty grapheme is a gap; inventory graphemes are
// never empty, so the encoding is unambiguous.
struct AlignedColumn {
  Grapheme src;
  Grapheme dst;

  bool src_gap() const { return src.empty(); }
  bool dst_gap() const { return dst.empty(); }
};

struct NwAlignment {
  int score = 0;
  std::vector<AlignedColumn> columns;
};

// Global alignment maximizing match(+1) / mismatch(-1) / gap(-1) scores.
// Ties in the traceback break diagonal > up > left so the alignment is
// deterministic. Throws on empty input.
NwAlignment needleman_wunsch(const std::vector<Grapheme>& a,
                             const std::vector<Grapheme>& b,
                             const AlignmentParams& params = {});

// Renders an alignment with `−` for gaps, one `src/dst` column per entry;
// debugging aid only — the serialized matrix never contains gaps.
std::string format_alignment(const NwAlignment& alignment);

// A source-language word and a dominant-language word written alike.
struct SpellingPair {
  enum class Provenance { kRuleDerived, kDictionary };

  std::string src_word;
  std::string dom_word;
  Provenance provenance = Provenance::kRuleDerived;
};

struct PairExtractionStats {
  uint64_t words_scanned = 0;
  uint64_t words_capped = 0;  // variant enumeration hit the cap
  uint64_t variants_generated = 0;
  uint64_t pairs_emitted = 0;
};

// Variant cap per word during spelling-pair search.
inline constexpr size_t kVariantCap = 256;

// For every vocabulary word, enumerates spellings reachable by applying
// mapping rules position by position (original grapheme always allowed;
// diacritics may additionally drop), breadth-first by fewest substitutions
// and capped at kVariantCap variants; every variant found in the dominant
// lexicon yields a pair. Output is deduplicated and deterministic.
std::vector<SpellingPair> extract_spelling_pairs(
    const Vocabulary& src_vocab, const std::set<std::string>& dom_lexicon,
    const MappingRuleSet& rules, const ScriptInventory& src_inv,
    PairExtractionStats* stats = nullptr);

void save_pairs(const std::vector<SpellingPair>& pairs,
                const std::string& path);
std::vector<SpellingPair> load_pairs(const std::string& path);

struct MatrixEntry {
  std::u32string target;  // code points; empty = deletion
  double score = 0.0;
  bool from_rule = false;
};

// Scored source → target alternatives for one language pair. Keys and
// targets are flattened code-point strings (a compound grapheme or a
// two-grapheme rule source is just a longer key). Identity alternatives are
// excluded from `entries` — a sampled replacement must change the text —
// and live in `identities` for diagnostics.
struct CharAlignmentMatrix {
  std::string src_lang;
  std::string dom_lang;
  std::map<std::u32string, std::vector<MatrixEntry>> entries;
  std::map<std::u32string, double> identities;

  bool empty() const { return entries.empty() && identities.empty(); }
  // Longest key, in code points; 0 when entries is empty.
  size_t max_key_size() const;
};

// Aligns every pair, accumulates non-gap column counts, L2-normalizes each
// source row, prunes scores below kScoreFloor, then overlays rule entries at
// score 1.0 and moves identity entries to the diagnostics table. Pair
// alignment parallelizes across `threads`; counts merge commutatively, so
// the result is identical to a serial build.
inline constexpr double kScoreFloor = 0.1;

CharAlignmentMatrix build_alignment_matrix(
    const std::vector<SpellingPair>& pairs, const MappingRuleSet& rules,
    const ScriptInventory& src_inv, const ScriptInventory& dom_inv,
    int threads = 1);

// TSV `src<TAB>target<TAB>score<TAB>origin` with origin in {rule, count} and
// `∅` for the empty (deletion) target; identity diagnostics go to
// `<path>.identity.tsv` as `src<TAB>score`. load_matrix accepts a missing
// identity sidecar.
void save_matrix(const CharAlignmentMatrix& matrix, const std::string& path);
CharAlignmentMatrix load_matrix(const std::string& path);

}  // namespace scriptnorm
