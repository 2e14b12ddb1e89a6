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
#include <string>
#include <vector>

namespace scriptnorm {

// Averaged-embedding linear classifier over hashed character n-grams
// (2..4 per '<'-wrapped word, plus the whole word), the shallow fastText
// recipe sized for this task.
struct LangIdModel {
  std::vector<std::string> labels;
  uint32_t buckets = 1u << 21;
  uint32_t dim = 16;
  std::vector<float> embeddings;   // buckets x dim, row-major
  std::vector<float> out_weights;  // labels x dim, row-major

  size_t label_index(const std::string& label) const;  // npos when missing
};

// Hashed feature ids for one sentence; empty for whitespace-only input.
std::vector<uint32_t> hash_features(const std::string& sentence,
                                    uint32_t buckets);

enum class Setup { kClean, kNoisy, kMerged };

// Per-label sentence pools. `noisy` holds whichever noise condition the
// experiment runs on (a single level or the union of all levels); labels
// without noisy data — the dominant languages — may leave it empty.
struct LabelData {
  std::vector<std::string> clean;
  std::vector<std::string> noisy;
};

struct TestItem {
  std::string label;
  std::string sentence;
  bool noisy = false;
};

struct TrainOptions {
  Setup setup = Setup::kMerged;
  size_t cap = 6000;    // per-label sentence cap (doubled for kMerged)
  double split = 0.8;   // train fraction; the rest is the frozen test set
  uint64_t seed = 0;
  double learning_rate = 0.1;
  int epochs = 25;
};

struct TrainResult {
  LangIdModel model;
  std::vector<TestItem> test;
  std::vector<std::string> log;  // per-label counts, shortfalls, fallbacks
};

// Down-samples each label's pool(s) to the cap (uniform, seeded; shortfalls
// logged), assembles the setup's training data — kClean: clean only;
// kNoisy: noisy, falling back to clean for labels without noisy data;
// kMerged: clean + noisy up to 2·cap with spare clean sentences topping up
// towards parity — then trains by SGD with per-epoch seeded shuffles and a
// linearly decaying learning rate. Deterministic for a fixed seed.
TrainResult train_langid(const std::map<std::string, LabelData>& data,
                         const TrainOptions& options);

// Softmax scores, descending (ties by label order), top k. Errors on an
// empty sentence or k > |labels|.
std::vector<std::pair<std::string, double>> predict_topk(
    const LangIdModel& model, const std::string& sentence, size_t k);

struct LabelScores {
  uint64_t n = 0;
  double p1 = 0, r1 = 0, f1 = 0;
  double p2 = 0, r2 = 0, f2 = 0;
};

// P@k = hits-in-top-k / (k·N), R@k = hits-in-top-k / N, F@k their harmonic
// mean; confusion counts come from top-1 predictions.
struct LangIdEval {
  std::vector<std::string> labels;  // model order
  std::map<std::string, LabelScores> per_label;
  LabelScores macro;  // averaged over labels present in the test set
  std::vector<std::vector<uint64_t>> confusion;  // [gold][predicted]
};

LangIdEval eval_langid(const LangIdModel& model,
                       const std::vector<TestItem>& test);

// CSV renderings: per-label rows plus a macro row; confusion as a labelled
// square table.
std::string eval_csv(const LangIdEval& eval);
std::string confusion_csv(const LangIdEval& eval);

// Single binary file: magic, version, label table, then raw row-major
// float blocks.
void save_model(const LangIdModel& model, const std::string& path);
LangIdModel load_model(const std::string& path);

// TSV `label<TAB>noisy(0|1)<TAB>sentence`.
void save_test_items(const std::vector<TestItem>& items,
                     const std::string& path);
std::vector<TestItem> load_test_items(const std::string& path);

}  // namespace scriptnorm
