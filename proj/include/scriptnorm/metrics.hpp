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
#include <string>
#include <vector>

namespace scriptnorm {

struct EvalReport {
  double bleu = 0.0;     // 0..100
  double chrf = 0.0;     // 0..100
  double seq_acc = 0.0;  // 0..1
  uint64_t n_pairs = 0;
};

// Corpus-level BLEU over the corpus tokenizer's tokens: modified n-gram
// precisions for n = 1..4, geometric mean with exponential smoothing of
// zero counts (first zero precision becomes 1/(2·denominator), halving
// again for each further zero order), brevity penalty, scaled to 0..100.
double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::string>& refs);

// Corpus-level chrF: character n-grams n = 1..6 over whitespace-stripped
// code points, per-order F-score with beta = 2 from corpus-aggregated
// counts, averaged over the orders that occur, scaled to 0..100.
double chrf_score(const std::vector<std::string>& hyps,
                  const std::vector<std::string>& refs);

// Positional token matches divided by total reference tokens. Hypothesis
// tokens past the reference length are ignored; reference positions past
// the hypothesis length count as wrong.
double sequence_accuracy(const std::vector<std::string>& hyps,
                         const std::vector<std::string>& refs);

// All three metrics over two line-aligned files. In baseline mode hyp_file
// is a `noisy<TAB>clean` dataset scored as-is — noisy column against clean
// column, the no-normalization baseline — and ref_file is ignored.
EvalReport evaluate(const std::string& hyp_file, const std::string& ref_file,
                    bool baseline_mode);

EvalReport evaluate_lines(const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs);

// Single-line TSV: bleu, chrf, seq_acc, n_pairs.
std::string report_tsv_line(const EvalReport& report);

// One `label,bleu,chrf,seq_acc,n_pairs` row for plot-ready CSV files.
std::string report_csv_row(const std::string& label,
                           const EvalReport& report);
inline constexpr const char* kReportCsvHeader =
    "label,bleu,chrf,seq_acc,n_pairs";

}  // namespace scriptnorm
