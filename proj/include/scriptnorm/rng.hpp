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
#include <random>
#include <vector>

namespace scriptnorm {

// splitmix64 step; used to mix seeds into independent stream seeds.
uint64_t splitmix64(uint64_t& state);

// Derive an independent stream seed from (seed, a, b). Noise generation uses
// (user_seed, level, sentence_index) so that sentences can be processed in
// any order — or in parallel — with byte-identical results.
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b);

// Deterministic RNG wrapper. std::mt19937_64 has a standardized sequence,
// but std::uniform_int_distribution does not — its mapping is
// implementation-defined, which would make outputs differ across standard
// libraries. Bounded draws are therefore done with plain rejection sampling.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // Uniform integer in [0, n). n must be > 0.
  uint64_t next_below(uint64_t n);

  // Uniform double in [0, 1) with 53 bits of entropy.
  double next_unit();

  // First k elements of a uniformly drawn k-permutation of {0, .., n-1}
  // (partial Fisher-Yates).
  std::vector<size_t> sample_without_replacement(size_t n, size_t k);

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace scriptnorm
