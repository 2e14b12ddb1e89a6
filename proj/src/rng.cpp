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

#include "scriptnorm/rng.hpp"

#include <numeric>

#include "scriptnorm/error.hpp"

namespace scriptnorm {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t state = seed;
  uint64_t x = splitmix64(state);
  state ^= a * 0xA24BAED4963EE407ULL;
  uint64_t y = splitmix64(state);
  state ^= b * 0x9FB21C651E98DF25ULL;
  uint64_t z = splitmix64(state);
  return x ^ (y << 1) ^ z;
}

uint64_t Rng::next_below(uint64_t n) {
  if (n == 0) throw Error("Rng::next_below: empty range");
  // Rejection sampling over the top of the 64-bit range keeps the draw
  // exactly uniform and fully portable.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % n;
}

double Rng::next_unit() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
  if (k > n) throw Error("sample_without_replacement: k > n");
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace scriptnorm
