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

#include "scriptnorm/noise.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "scriptnorm/error.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

namespace {

struct Occurrence {
  size_t begin;  // code-point offset
  size_t size;   // code points consumed
  const std::vector<MatrixEntry>* row;
};

std::vector<Occurrence> scan_positions(const std::u32string& cps,
                                       const CharAlignmentMatrix& matrix) {
  std::vector<Occurrence> positions;
  const size_t longest = matrix.max_key_size();
  size_t i = 0;
  while (i < cps.size()) {
    bool matched = false;
    const size_t cap = std::min(longest, cps.size() - i);
    for (size_t len = cap; len >= 1; --len) {
      const auto it = matrix.entries.find(cps.substr(i, len));
      if (it != matrix.entries.end()) {
        positions.push_back({i, len, &it->second});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return positions;
}

}  // namespace

std::string inject_noise(const std::string& sentence,
                         const CharAlignmentMatrix& matrix, int level,
                         Rng& rng) {
  if (level < 0 || level > 100) {
    throw Error("noise level must lie in [0, 100], got " +
                std::to_string(level));
  }
  const std::u32string cps = decode_utf8(sentence);
  const std::vector<Occurrence> positions = scan_positions(cps, matrix);
  const size_t k = static_cast<size_t>(
      std::llround(level / 100.0 * static_cast<double>(positions.size())));
  if (k == 0) return sentence;

  std::vector<size_t> chosen =
      rng.sample_without_replacement(positions.size(), k);
  // Replacements are drawn in left-to-right position order so the draw
  // sequence is a pure function of the chosen set.
  std::sort(chosen.begin(), chosen.end());

  std::u32string out;
  out.reserve(cps.size());
  size_t cursor = 0;
  for (const size_t index : chosen) {
    const Occurrence& occ = positions[index];
    out.append(cps, cursor, occ.begin - cursor);
    const MatrixEntry& pick =
        (*occ.row)[rng.next_below(occ.row->size())];
    out.append(pick.target);
    cursor = occ.begin + occ.size;
  }
  out.append(cps, cursor, cps.size() - cursor);
  return encode_utf8(out);
}

namespace {

ParallelDataset make_level_dataset(const std::vector<std::string>& sentences,
                                   const CharAlignmentMatrix& matrix,
                                   uint64_t seed, int level, int threads) {
  ParallelDataset dataset;
  dataset.src_lang = matrix.src_lang;
  dataset.dom_lang = matrix.dom_lang;
  dataset.level = level;
  dataset.seed = seed;
  dataset.pairs.resize(sentences.size());

  const auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(seed, static_cast<uint64_t>(level), i));
      dataset.pairs[i] = {inject_noise(sentences[i], matrix, level, rng),
                          sentences[i], level, i};
    }
  };

  if (threads <= 1 || sentences.size() < 2) {
    work(0, sentences.size());
  } else {
    const size_t workers =
        std::min<size_t>(static_cast<size_t>(threads), sentences.size());
    const size_t chunk = (sentences.size() + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      const size_t begin = w * chunk;
      const size_t end = std::min(sentences.size(), begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return dataset;
}

}  // namespace

std::vector<ParallelDataset> generate_parallel_datasets(
    const std::vector<std::string>& sentences,
    const CharAlignmentMatrix& matrix, uint64_t seed, bool dedup,
    int threads) {
  if (sentences.empty()) {
    throw Error("generate_parallel_datasets: empty corpus");
  }

  std::vector<ParallelDataset> datasets;
  for (const int level : kNoiseLevels) {
    datasets.push_back(
        make_level_dataset(sentences, matrix, seed, level, threads));
  }

  ParallelDataset all;
  all.src_lang = matrix.src_lang;
  all.dom_lang = matrix.dom_lang;
  all.level = kAllLevels;
  all.seed = seed;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& dataset : datasets) {
    for (const auto& pair : dataset.pairs) {
      if (dedup && !seen.insert({pair.noisy, pair.clean}).second) continue;
      all.pairs.push_back(pair);
      all.pairs.back().pair_index = all.pairs.size() - 1;
    }
  }
  datasets.push_back(std::move(all));
  return datasets;
}

void save_dataset(const ParallelDataset& dataset, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(dataset.pairs.size());
  for (const auto& pair : dataset.pairs) {
    lines.push_back(pair.noisy + "\t" + pair.clean);
  }
  write_lines(path, lines);
}

ParallelDataset load_dataset(const std::string& path) {
  ParallelDataset dataset;
  dataset.level = kUnknownLevel;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    if (lines[idx].empty()) continue;
    const auto fields = split_tsv(lines[idx]);
    if (fields.size() != 2) {
      throw ParseError(path, idx + 1, "expected `noisy<TAB>clean`");
    }
    dataset.pairs.push_back(
        {fields[0], fields[1], kUnknownLevel, dataset.pairs.size()});
  }
  return dataset;
}

std::string dataset_filename(const std::string& src_lang,
                             const std::string& dom_lang, int level) {
  const std::string suffix =
      (level == kAllLevels) ? "all" : std::to_string(level);
  return src_lang + "_" + dom_lang + "." + suffix + ".tsv";
}

}  // namespace scriptnorm
