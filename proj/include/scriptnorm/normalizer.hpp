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
//
// Noisy-channel normalization: a beam decoder over the inverted alignment
// matrix, guided by a character n-gram language model trained on clean text.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scriptnorm/alignment.hpp"
#include "scriptnorm/metrics.hpp"

namespace scriptnorm {

// One way a noisy grapheme sequence may read in clean text. `clean` holds
// 0-2 graphemes as flattened code points; empty means the noisy grapheme
// was inserted and should be dropped.
struct ChannelEntry {
  std::u32string clean;
  double weight = 0.0;
};

// Inverted alignment matrix: noisy grapheme sequence -> clean candidates.
// Every key also carries an identity candidate so the decoder is never
// forced to rewrite.
struct ChannelModel {
  double self_weight = 1.0;
  std::map<std::u32string, std::vector<ChannelEntry>> inverse;
  // Checksum of the matrix file this channel was fitted from; "-" when the
  // channel was fitted from an in-memory matrix.
  std::string matrix_sha256 = "-";

  bool empty() const { return inverse.empty(); }
  // Longest key, in code points; 0 when the map is empty.
  size_t max_key_size() const;
};

// Inverts the matrix: every entry s -> t with score w becomes a candidate
// t -> s with weight w (deletion targets have no noisy surface and are
// skipped). Identity candidates at self_weight are added for every
// grapheme the matrix mentions and for every inverse key, so unchanged
// text can always be kept. Rows are sorted by clean candidate.
ChannelModel fit_channel(const CharAlignmentMatrix& matrix,
                         double self_weight = 1.0);

// Add-alpha character n-gram model over code points. Sentences are padded
// with `order - 1` begin sentinels so every position has a full context.
class CharLM {
 public:
  int order = 5;
  double alpha = 0.1;
  std::map<std::u32string, uint64_t> gram_counts;
  std::map<std::u32string, uint64_t> context_counts;
  std::set<char32_t> alphabet;

  // log P(next | context) with add-alpha smoothing over the alphabet.
  // Context is right-aligned: only its last `order - 1` code points are
  // used, padded with the begin sentinel when shorter.
  double log_prob(const std::u32string& context, char32_t next) const;

  // Sum of log_prob over `text` appended after `prefix`, advancing the
  // context one code point at a time.
  double score_append(const std::u32string& prefix,
                      const std::u32string& text) const;
};

// Sentinel code point used to left-pad contexts at sentence start.
inline constexpr char32_t kLmBos = 0x1;

// Counts n-grams of `order` code points over the sentences. The smoothing
// alphabet is the set of code points seen in training plus
// `extra_alphabet` (e.g. channel candidates absent from the corpus).
CharLM train_char_lm(const std::vector<std::string>& sentences,
                     int order = 5, double alpha = 0.1,
                     const std::set<char32_t>& extra_alphabet = {});

// Left-to-right beam search over the noisy sentence. At each position the
// longest channel key starting there fixes the candidate set (identity
// passthrough when no key matches); whitespace is copied verbatim.
// Hypotheses score log channel weight + language-model log probability;
// ties break lexicographically, so the result is deterministic.
std::string beam_normalize(const std::string& noisy,
                           const ChannelModel& channel, const CharLM& lm,
                           size_t beam_width = 8);

// beam_normalize over every line, preserving order. Decoding is
// per-sentence independent and parallelizes across `threads`.
std::vector<std::string> normalize_lines(
    const std::vector<std::string>& lines, const ChannelModel& channel,
    const CharLM& lm, size_t beam_width = 8, unsigned threads = 1);

// Scores externally produced hypotheses against references: line-aligned
// files, full metric report.
EvalReport score_hypotheses(const std::string& hyp_file,
                            const std::string& ref_file);

// TSV `noisy<TAB>clean<TAB>weight` with a header carrying self_weight and
// the source matrix checksum. Grapheme cells use U+XXXX tokens joined by
// '+'; an empty clean side is written as the empty-set sign.
void save_channel(const ChannelModel& channel, const std::string& path);
ChannelModel load_channel(const std::string& path);

// TSV with `order` and `alpha` rows, one `alphabet` row per code point,
// and one `gram` row per counted n-gram. Context counts are rebuilt on
// load by summing gram counts.
void save_lm(const CharLM& lm, const std::string& path);
CharLM load_lm(const std::string& path);

}  // namespace scriptnorm
