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

#include "scriptnorm/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "scriptnorm/error.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

namespace {

constexpr char32_t kEmptySetSign = 0x2205;

std::string cp_token(char32_t cp) { return codepoint_label(cp); }

std::string sequence_token(const std::u32string& seq) {
  if (seq.empty()) return encode_utf8(kEmptySetSign);
  std::string out;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += '+';
    out += cp_token(seq[i]);
  }
  return out;
}

std::u32string parse_sequence_token(const std::string& token,
                                    const std::string& path, size_t line_no) {
  if (token == encode_utf8(kEmptySetSign)) return U"";
  std::u32string seq;
  size_t start = 0;
  while (start < token.size()) {
    // Code point tokens join with '+'; a separator is always followed by
    // the next token's leading 'U', which hex digits never contain.
    const size_t sep = token.find("+U", start + 1);
    const std::string part = token.substr(
        start, sep == std::string::npos ? std::string::npos : sep - start);
    if (part.size() < 6 || part.size() > 8 || part[0] != 'U' ||
        part[1] != '+') {
      throw ParseError(path, line_no, "bad code point token: " + part);
    }
    char32_t cp = 0;
    for (size_t i = 2; i < part.size(); ++i) {
      const char c = part[i];
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= static_cast<char32_t>(c - '0');
      } else if (c >= 'A' && c <= 'F') {
        cp |= static_cast<char32_t>(c - 'A' + 10);
      } else {
        throw ParseError(path, line_no, "bad code point token: " + part);
      }
    }
    seq += cp;
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return seq;
}

void sort_channel_row(std::vector<ChannelEntry>* row) {
  std::sort(row->begin(), row->end(),
            [](const ChannelEntry& a, const ChannelEntry& b) {
              return a.clean < b.clean;
            });
}

std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", w);
  return buf;
}

}  // namespace

size_t ChannelModel::max_key_size() const {
  size_t longest = 0;
  for (const auto& [key, row] : inverse) {
    (void)row;
    longest = std::max(longest, key.size());
  }
  return longest;
}

ChannelModel fit_channel(const CharAlignmentMatrix& matrix,
                         double self_weight) {
  if (matrix.empty()) {
    throw Error("fit_channel: empty alignment matrix");
  }
  if (self_weight <= 0.0) {
    throw Error("fit_channel: self_weight must be positive");
  }

  ChannelModel channel;
  channel.self_weight = self_weight;
  for (const auto& [source, row] : matrix.entries) {
    for (const auto& entry : row) {
      if (entry.target.empty()) continue;  // deletions have no noisy surface
      channel.inverse[entry.target].push_back({source, entry.score});
    }
  }

  // Identity candidates: every grapheme the matrix mentions can stand for
  // itself, and so can every multi-grapheme key the inversion produced.
  std::set<std::u32string> keep;
  for (const auto& [source, row] : matrix.entries) {
    keep.insert(source);
    for (const auto& entry : row) {
      if (!entry.target.empty()) keep.insert(entry.target);
    }
  }
  for (const auto& [grapheme, score] : matrix.identities) {
    (void)score;
    keep.insert(grapheme);
  }
  for (const auto& [key, row] : channel.inverse) {
    (void)row;
    keep.insert(key);
  }
  for (const auto& key : keep) {
    auto& row = channel.inverse[key];
    const bool present =
        std::any_of(row.begin(), row.end(), [&](const ChannelEntry& e) {
          return e.clean == key;
        });
    if (!present) row.push_back({key, self_weight});
  }
  for (auto& [key, row] : channel.inverse) {
    (void)key;
    sort_channel_row(&row);
  }
  return channel;
}

double CharLM::log_prob(const std::u32string& context, char32_t next) const {
  const size_t ctx_len = static_cast<size_t>(order) - 1;
  std::u32string ctx(ctx_len, kLmBos);
  const size_t take = std::min(context.size(), ctx_len);
  for (size_t i = 0; i < take; ++i) {
    ctx[ctx_len - take + i] = context[context.size() - take + i];
  }

  uint64_t gram = 0;
  if (const auto it = gram_counts.find(ctx + next); it != gram_counts.end()) {
    gram = it->second;
  }
  uint64_t ctx_count = 0;
  if (const auto it = context_counts.find(ctx); it != context_counts.end()) {
    ctx_count = it->second;
  }
  const double vocab = static_cast<double>(std::max<size_t>(alphabet.size(), 1));
  return std::log((gram + alpha) / (ctx_count + alpha * vocab));
}

double CharLM::score_append(const std::u32string& prefix,
                            const std::u32string& text) const {
  double total = 0.0;
  std::u32string context = prefix;
  for (const char32_t cp : text) {
    total += log_prob(context, cp);
    context += cp;
  }
  return total;
}

CharLM train_char_lm(const std::vector<std::string>& sentences, int order,
                     double alpha, const std::set<char32_t>& extra_alphabet) {
  if (order < 2) throw Error("train_char_lm: order must be at least 2");
  if (alpha <= 0.0) throw Error("train_char_lm: alpha must be positive");

  CharLM lm;
  lm.order = order;
  lm.alpha = alpha;
  lm.alphabet = extra_alphabet;
  const size_t ctx_len = static_cast<size_t>(order) - 1;
  for (const auto& sentence : sentences) {
    const std::u32string cps = decode_utf8(sentence);
    if (cps.empty()) continue;
    std::u32string padded(ctx_len, kLmBos);
    padded += cps;
    for (size_t i = 0; i < cps.size(); ++i) {
      lm.gram_counts[padded.substr(i, order)] += 1;
      lm.context_counts[padded.substr(i, ctx_len)] += 1;
      lm.alphabet.insert(cps[i]);
    }
  }
  return lm;
}

namespace {

struct Hypothesis {
  std::u32string output;
  double score = 0.0;
};

// Longest channel key starting at `pos`, or 0 when none matches.
size_t longest_key_match(const ChannelModel& channel,
                         const std::u32string& cps, size_t pos,
                         size_t max_key) {
  const size_t cap = std::min(max_key, cps.size() - pos);
  for (size_t len = cap; len >= 1; --len) {
    if (channel.inverse.count(cps.substr(pos, len)) > 0) return len;
  }
  return 0;
}

}  // namespace

std::string beam_normalize(const std::string& noisy,
                           const ChannelModel& channel, const CharLM& lm,
                           size_t beam_width) {
  if (beam_width < 1) throw Error("beam_normalize: beam_width must be >= 1");

  const std::u32string cps = decode_utf8(noisy);
  const size_t max_key = channel.max_key_size();

  std::vector<Hypothesis> beam{{U"", 0.0}};
  const std::vector<ChannelEntry>* candidates = nullptr;
  std::vector<ChannelEntry> passthrough(1);

  size_t pos = 0;
  while (pos < cps.size()) {
    size_t span = 1;
    if (is_space_cp(cps[pos]) || max_key == 0) {
      passthrough[0] = {cps.substr(pos, 1), 1.0};
      candidates = &passthrough;
    } else if (const size_t len = longest_key_match(channel, cps, pos, max_key);
               len > 0) {
      span = len;
      candidates = &channel.inverse.at(cps.substr(pos, len));
    } else {
      passthrough[0] = {cps.substr(pos, 1), 1.0};
      candidates = &passthrough;
    }

    // Expand every hypothesis by every candidate; merge identical outputs
    // keeping the best score (equal outputs have identical futures).
    std::map<std::u32string, double> merged;
    for (const auto& hyp : beam) {
      for (const auto& candidate : *candidates) {
        const double score = hyp.score + std::log(candidate.weight) +
                             lm.score_append(hyp.output, candidate.clean);
        std::u32string output = hyp.output + candidate.clean;
        const auto [it, inserted] = merged.emplace(std::move(output), score);
        if (!inserted && score > it->second) it->second = score;
      }
    }

    beam.clear();
    for (auto& [output, score] : merged) {
      beam.push_back({output, score});
    }
    std::sort(beam.begin(), beam.end(),
              [](const Hypothesis& a, const Hypothesis& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.output < b.output;
              });
    if (beam.size() > beam_width) beam.resize(beam_width);
    pos += span;
  }
  return encode_utf8(beam.front().output);
}

std::vector<std::string> normalize_lines(const std::vector<std::string>& lines,
                                         const ChannelModel& channel,
                                         const CharLM& lm, size_t beam_width,
                                         unsigned threads) {
  std::vector<std::string> outputs(lines.size());
  const unsigned workers = std::max(
      1u, std::min<unsigned>(threads, static_cast<unsigned>(lines.size())));
  if (workers <= 1) {
    for (size_t i = 0; i < lines.size(); ++i) {
      outputs[i] = beam_normalize(lines[i], channel, lm, beam_width);
    }
    return outputs;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < lines.size(); i += workers) {
        outputs[i] = beam_normalize(lines[i], channel, lm, beam_width);
      }
    });
  }
  for (auto& worker : pool) worker.join();
  return outputs;
}

EvalReport score_hypotheses(const std::string& hyp_file,
                            const std::string& ref_file) {
  return evaluate(hyp_file, ref_file, /*baseline_mode=*/false);
}

void save_channel(const ChannelModel& channel, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("# channel: noisy grapheme -> clean candidates");
  lines.push_back("# self_weight: " + format_weight(channel.self_weight));
  lines.push_back("# matrix_sha256: " + channel.matrix_sha256);
  for (const auto& [key, row] : channel.inverse) {
    for (const auto& entry : row) {
      lines.push_back(sequence_token(key) + "\t" +
                      sequence_token(entry.clean) + "\t" +
                      format_weight(entry.weight));
    }
  }
  write_lines(path, lines);
}

ChannelModel load_channel(const std::string& path) {
  ChannelModel channel;
  channel.inverse.clear();
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& line = lines[idx];
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto parse_tail = [&](const std::string& prefix) -> std::string {
        if (line.rfind(prefix, 0) == 0) return trim(line.substr(prefix.size()));
        return "";
      };
      if (const auto w = parse_tail("# self_weight:"); !w.empty()) {
        channel.self_weight = std::stod(w);
      } else if (const auto digest = parse_tail("# matrix_sha256:");
                 !digest.empty()) {
        channel.matrix_sha256 = digest;
      }
      continue;
    }
    const auto fields = split_tsv(line);
    if (fields.size() != 3) {
      throw ParseError(path, idx + 1, "expected `noisy<TAB>clean<TAB>weight`");
    }
    const std::u32string key = parse_sequence_token(fields[0], path, idx + 1);
    if (key.empty()) {
      throw ParseError(path, idx + 1, "noisy side must be non-empty");
    }
    double weight = 0.0;
    try {
      weight = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(path, idx + 1, "bad weight: " + fields[2]);
    }
    if (!(weight > 0.0)) {
      throw ParseError(path, idx + 1, "weight must be positive");
    }
    channel.inverse[key].push_back(
        {parse_sequence_token(fields[1], path, idx + 1), weight});
  }
  if (channel.inverse.empty()) {
    throw ParseError(path, 1, "channel file has no entries");
  }
  for (auto& [key, row] : channel.inverse) {
    (void)key;
    sort_channel_row(&row);
  }
  return channel;
}

void save_lm(const CharLM& lm, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("# character language model counts");
  lines.push_back("order\t" + std::to_string(lm.order));
  lines.push_back("alpha\t" + format_weight(lm.alpha));
  for (const char32_t cp : lm.alphabet) {
    lines.push_back("alphabet\t" + cp_token(cp));
  }
  for (const auto& [gram, count] : lm.gram_counts) {
    lines.push_back("gram\t" + sequence_token(gram) + "\t" +
                    std::to_string(count));
  }
  write_lines(path, lines);
}

CharLM load_lm(const std::string& path) {
  CharLM lm;
  lm.alphabet.clear();
  bool saw_order = false;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& line = lines[idx];
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tsv(line);
    if (fields[0] == "order" && fields.size() == 2) {
      try {
        lm.order = std::stoi(fields[1]);
      } catch (const std::exception&) {
        throw ParseError(path, idx + 1, "bad order: " + fields[1]);
      }
      if (lm.order < 2) throw ParseError(path, idx + 1, "order must be >= 2");
      saw_order = true;
    } else if (fields[0] == "alpha" && fields.size() == 2) {
      try {
        lm.alpha = std::stod(fields[1]);
      } catch (const std::exception&) {
        throw ParseError(path, idx + 1, "bad alpha: " + fields[1]);
      }
      if (!(lm.alpha > 0.0)) {
        throw ParseError(path, idx + 1, "alpha must be positive");
      }
    } else if (fields[0] == "alphabet" && fields.size() == 2) {
      const auto seq = parse_sequence_token(fields[1], path, idx + 1);
      if (seq.size() != 1) {
        throw ParseError(path, idx + 1, "alphabet rows hold one code point");
      }
      lm.alphabet.insert(seq[0]);
    } else if (fields[0] == "gram" && fields.size() == 3) {
      const auto gram = parse_sequence_token(fields[1], path, idx + 1);
      uint64_t count = 0;
      try {
        count = std::stoull(fields[2]);
      } catch (const std::exception&) {
        throw ParseError(path, idx + 1, "bad count: " + fields[2]);
      }
      if (count == 0) throw ParseError(path, idx + 1, "zero gram count");
      lm.gram_counts[gram] += count;
    } else {
      throw ParseError(path, idx + 1, "unrecognized row: " + fields[0]);
    }
  }
  if (!saw_order) throw ParseError(path, 1, "missing order row");
  for (const auto& [gram, count] : lm.gram_counts) {
    if (gram.size() != static_cast<size_t>(lm.order)) {
      throw ParseError(path, 1, "gram length disagrees with order");
    }
    lm.context_counts[gram.substr(0, gram.size() - 1)] += count;
  }
  return lm;
}

}  // namespace scriptnorm
