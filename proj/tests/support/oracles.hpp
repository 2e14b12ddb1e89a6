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

#include <string>
#include <vector>

#include "scriptnorm/inventory.hpp"

// Reference implementations the production code is checked against. They are
// deliberately written with different machinery (exhaustive recursion, sorted
// n-gram lists) so that a shared bug cannot hide in common code.
namespace scriptnorm::testing {

// Best global-alignment score found by recursively enumerating every
// alignment. Exponential; intended for sequences of length <= ~8.
int brute_force_alignment_score(const std::vector<Grapheme>& a,
                                const std::vector<Grapheme>& b, int match = 1,
                                int mismatch = -1, int gap = -1);

// Corpus BLEU (orders 1-4, exponential zero-count smoothing, brevity
// penalty, 0-100) recomputed from scratch over sorted n-gram lists.
double oracle_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::string>& refs);

// Corpus chrF (character orders 1-6 over whitespace-stripped code points,
// beta = 2, 0-100) recomputed from scratch over sorted n-gram lists.
double oracle_chrf(const std::vector<std::string>& hyps,
                   const std::vector<std::string>& refs);

}  // namespace scriptnorm::testing
