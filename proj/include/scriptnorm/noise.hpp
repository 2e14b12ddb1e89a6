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

#include "scriptnorm/alignment.hpp"
#include "scriptnorm/rng.hpp"

namespace scriptnorm {

// The graded levels; a full generation run produces one dataset per level
// plus their union.
inline constexpr int kNoiseLevels[] = {20, 40, 60, 80, 100};
inline constexpr int kAllLevels = -1;   // the union dataset
inline constexpr int kUnknownLevel = -2;  // loaded from file, level unstated

struct SentencePair {
  std::string noisy;
  std::string clean;
  int level = 0;
  uint64_t pair_index = 0;
};

struct ParallelDataset {
  std::string src_lang;
  std::string dom_lang;
  int level = 0;
  uint64_t seed = 0;
  std::vector<SentencePair> pairs;
};

// Replaces exactly llround(level/100 * |P|) grapheme occurrences, where P is
// the set of matrix-key occurrences found by a left-to-right longest-match
// scan (longer keys win; a match consumes its span). Positions are chosen
// uniformly without replacement; each replacement is drawn uniformly from
// the position's alternative row — scores only gate admission into the
// matrix, they do not weight the draw. |P| = 0 or level 0 returns the input.
std::string inject_noise(const std::string& sentence,
                         const CharAlignmentMatrix& matrix, int level,
                         Rng& rng);

// One dataset per level in kNoiseLevels, in order, then the union dataset
// (level kAllLevels): the concatenation of the five, deduplicated on
// (noisy, clean) keeping first occurrence when dedup is set. The RNG stream
// for sentence i at level L is seeded with derive_seed(seed, L, i), so any
// processing order — including the threaded path — produces byte-identical
// results.
std::vector<ParallelDataset> generate_parallel_datasets(
    const std::vector<std::string>& sentences,
    const CharAlignmentMatrix& matrix, uint64_t seed, bool dedup = true,
    int threads = 1);

// One `noisy<TAB>clean` line per pair.
void save_dataset(const ParallelDataset& dataset, const std::string& path);
ParallelDataset load_dataset(const std::string& path);

// `{src}_{dom}.{level}.tsv`, with `all` for the union dataset.
std::string dataset_filename(const std::string& src_lang,
                             const std::string& dom_lang, int level);

}  // namespace scriptnorm
