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

#include "scriptnorm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "scriptnorm/corpus.hpp"
#include "scriptnorm/error.hpp"
#include "scriptnorm/noise.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

namespace {

constexpr int kBleuMaxOrder = 4;
constexpr int kChrfMaxOrder = 6;
constexpr double kChrfBeta = 2.0;

void check_sizes(const std::vector<std::string>& hyps,
                 const std::vector<std::string>& refs) {
  if (hyps.empty()) throw Error("metrics: empty input");
  if (hyps.size() != refs.size()) {
    throw Error("metrics: " + std::to_string(hyps.size()) +
                " hypotheses vs " + std::to_string(refs.size()) +
                " references");
  }
}

// Token n-grams keyed by joining with an unused separator byte.
std::map<std::string, uint64_t> token_ngrams(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::string, uint64_t> grams;
  if (tokens.size() < static_cast<size_t>(n)) return grams;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) {
      if (j > 0) key += '\x1f';
      key += tokens[i + j];
    }
    ++grams[key];
  }
  return grams;
}

std::map<std::u32string, uint64_t> char_ngrams(const std::u32string& cps,
                                               int n) {
  std::map<std::u32string, uint64_t> grams;
  if (cps.size() < static_cast<size_t>(n)) return grams;
  for (size_t i = 0; i + n <= cps.size(); ++i) {
    ++grams[cps.substr(i, n)];
  }
  return grams;
}

template <typename Key>
uint64_t clipped_matches(const std::map<Key, uint64_t>& hyp,
                         const std::map<Key, uint64_t>& ref) {
  uint64_t matches = 0;
  for (const auto& [gram, count] : hyp) {
    const auto it = ref.find(gram);
    if (it != ref.end()) matches += std::min(count, it->second);
  }
  return matches;
}

std::u32string strip_whitespace(const std::string& text) {
  std::u32string out;
  for (const char32_t cp : decode_utf8(text)) {
    if (!is_space_cp(cp)) out.push_back(cp);
  }
  return out;
}

}  // namespace

double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::string>& refs) {
  check_sizes(hyps, refs);

  uint64_t numerators[kBleuMaxOrder + 1] = {0};
  uint64_t denominators[kBleuMaxOrder + 1] = {0};
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;
  for (size_t i = 0; i < hyps.size(); ++i) {
    const auto hyp_tokens = tokenize(hyps[i]);
    const auto ref_tokens = tokenize(refs[i]);
    hyp_len += hyp_tokens.size();
    ref_len += ref_tokens.size();
    for (int n = 1; n <= kBleuMaxOrder; ++n) {
      if (hyp_tokens.size() < static_cast<size_t>(n)) break;
      numerators[n] += clipped_matches(token_ngrams(hyp_tokens, n),
                                       token_ngrams(ref_tokens, n));
      denominators[n] += hyp_tokens.size() - n + 1;
    }
  }
  if (hyp_len == 0) return 0.0;

  double log_sum = 0.0;
  int orders = 0;
  double smooth = 1.0;
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    if (denominators[n] == 0) continue;
    double precision;
    if (numerators[n] == 0) {
      smooth *= 2.0;
      precision = 1.0 / (smooth * static_cast<double>(denominators[n]));
    } else {
      precision = static_cast<double>(numerators[n]) /
                  static_cast<double>(denominators[n]);
    }
    log_sum += std::log(precision);
    ++orders;
  }
  if (orders == 0) return 0.0;

  const double brevity =
      hyp_len >= ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_len) /
                               static_cast<double>(hyp_len));
  return 100.0 * brevity * std::exp(log_sum / orders);
}

double chrf_score(const std::vector<std::string>& hyps,
                  const std::vector<std::string>& refs) {
  check_sizes(hyps, refs);

  uint64_t matches[kChrfMaxOrder + 1] = {0};
  uint64_t hyp_total[kChrfMaxOrder + 1] = {0};
  uint64_t ref_total[kChrfMaxOrder + 1] = {0};
  for (size_t i = 0; i < hyps.size(); ++i) {
    const std::u32string hyp = strip_whitespace(hyps[i]);
    const std::u32string ref = strip_whitespace(refs[i]);
    for (int n = 1; n <= kChrfMaxOrder; ++n) {
      const auto hyp_grams = char_ngrams(hyp, n);
      const auto ref_grams = char_ngrams(ref, n);
      matches[n] += clipped_matches(hyp_grams, ref_grams);
      if (hyp.size() >= static_cast<size_t>(n)) {
        hyp_total[n] += hyp.size() - n + 1;
      }
      if (ref.size() >= static_cast<size_t>(n)) {
        ref_total[n] += ref.size() - n + 1;
      }
    }
  }

  const double beta_sq = kChrfBeta * kChrfBeta;
  double f_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= kChrfMaxOrder; ++n) {
    if (hyp_total[n] == 0 && ref_total[n] == 0) continue;
    ++orders;
    const double precision =
        hyp_total[n] == 0 ? 0.0
                          : static_cast<double>(matches[n]) /
                                static_cast<double>(hyp_total[n]);
    const double recall =
        ref_total[n] == 0 ? 0.0
                          : static_cast<double>(matches[n]) /
                                static_cast<double>(ref_total[n]);
    if (precision + recall > 0.0) {
      f_sum += (1.0 + beta_sq) * precision * recall /
               (beta_sq * precision + recall);
    }
  }
  if (orders == 0) return 0.0;
  return 100.0 * f_sum / orders;
}

double sequence_accuracy(const std::vector<std::string>& hyps,
                         const std::vector<std::string>& refs) {
  check_sizes(hyps, refs);

  uint64_t correct = 0;
  uint64_t total = 0;
  for (size_t i = 0; i < hyps.size(); ++i) {
    const auto hyp_tokens = tokenize(hyps[i]);
    const auto ref_tokens = tokenize(refs[i]);
    total += ref_tokens.size();
    const size_t overlap = std::min(hyp_tokens.size(), ref_tokens.size());
    for (size_t p = 0; p < overlap; ++p) {
      if (hyp_tokens[p] == ref_tokens[p]) ++correct;
    }
  }
  if (total == 0) return 1.0;
  return static_cast<double>(correct) / static_cast<double>(total);
}

EvalReport evaluate_lines(const std::vector<std::string>& hyps,
                          const std::vector<std::string>& refs) {
  EvalReport report;
  report.bleu = corpus_bleu(hyps, refs);
  report.chrf = chrf_score(hyps, refs);
  report.seq_acc = sequence_accuracy(hyps, refs);
  report.n_pairs = hyps.size();
  return report;
}

EvalReport evaluate(const std::string& hyp_file, const std::string& ref_file,
                    bool baseline_mode) {
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
  if (baseline_mode) {
    const ParallelDataset dataset = load_dataset(hyp_file);
    for (const auto& pair : dataset.pairs) {
      hyps.push_back(pair.noisy);
      refs.push_back(pair.clean);
    }
  } else {
    hyps = read_lines(hyp_file);
    refs = read_lines(ref_file);
  }
  return evaluate_lines(hyps, refs);
}

std::string report_tsv_line(const EvalReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.2f\t%.2f\t%.4f\t%llu", report.bleu,
                report.chrf, report.seq_acc,
                static_cast<unsigned long long>(report.n_pairs));
  return buf;
}

std::string report_csv_row(const std::string& label,
                           const EvalReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s,%.2f,%.2f,%.4f,%llu", label.c_str(),
                report.bleu, report.chrf, report.seq_acc,
                static_cast<unsigned long long>(report.n_pairs));
  return buf;
}

}  // namespace scriptnorm
