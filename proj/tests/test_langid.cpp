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

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "scriptnorm/error.hpp"
#include "scriptnorm/langid.hpp"
#include "scriptnorm/textio.hpp"
#include "support/fixtures.hpp"

namespace scriptnorm {
namespace {

using testing::split_letters;
using testing::synthetic_sentences;
using testing::TempDir;

bool log_mentions(const std::vector<std::string>& log,
                  const std::string& needle) {
  for (const auto& line : log) {
    if (line.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Every embedding row is (1, 0), so the averaged hidden vector is (1, 0) for
// any non-empty sentence and each label's logit equals its first output
// weight exactly. Rankings are therefore fully controlled.
LangIdModel constant_model(float w_aa, float w_bb, float w_cc) {
  LangIdModel model;
  model.labels = {"aa", "bb", "cc"};
  model.buckets = 4;
  model.dim = 2;
  model.embeddings.assign(static_cast<size_t>(model.buckets) * model.dim,
                          0.0f);
  for (uint32_t b = 0; b < model.buckets; ++b) {
    model.embeddings[static_cast<size_t>(b) * model.dim] = 1.0f;
  }
  model.out_weights = {w_aa, 0.0f, w_bb, 0.0f, w_cc, 0.0f};
  return model;
}

// Two easily separable labels; trained once and shared across cases.
struct ToyFixture {
  std::map<std::string, LabelData> data;
  TrainResult result;
};

const ToyFixture& toy() {
  static const ToyFixture fixture = [] {
    ToyFixture f;
    f.data["alpha"].clean =
        synthetic_sentences(40, 101, split_letters(U"abcdef"));
    f.data["beta"].clean =
        synthetic_sentences(40, 202, split_letters(U"uvwxyz"));
    TrainOptions options;
    options.setup = Setup::kClean;
    options.seed = 7;
    f.result = train_langid(f.data, options);
    return f;
  }();
  return fixture;
}

TEST_SUITE("langid") {

TEST_CASE("feature hashing") {
  CHECK(hash_features("", 1u << 21).empty());
  CHECK(hash_features(" \t \n ", 1u << 21).empty());

  // "<ab>" has 3 bigrams, 2 trigrams and 1 four-gram, plus the whole word.
  CHECK(hash_features("ab", 1u << 21).size() == 7);
  CHECK(hash_features("ab cd", 1u << 21).size() == 14);

  const auto a = hash_features("سڵاو باو", 1u << 21);
  const auto b = hash_features("سڵاو باو", 1u << 21);
  CHECK(a == b);
  for (const uint32_t f : hash_features("ab cd", 16)) CHECK(f < 16);
}

TEST_CASE("label lookup") {
  const LangIdModel model = constant_model(3.0f, 2.0f, 1.0f);
  CHECK(model.label_index("aa") == 0);
  CHECK(model.label_index("cc") == 2);
  CHECK(model.label_index("zz") == std::string::npos);
}

TEST_CASE("prediction ranking, probabilities and tie-break") {
  const LangIdModel model = constant_model(3.0f, 2.0f, 1.0f);
  const auto top = predict_topk(model, "whatever words", 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].first == "aa");
  CHECK(top[1].first == "bb");
  CHECK(top[2].first == "cc");
  CHECK(top[0].second > top[1].second);
  CHECK(top[1].second > top[2].second);
  CHECK(top[0].second + top[1].second + top[2].second ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Logits are exactly 3, 2, 1, so the softmax is computable by hand.
  const double z = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  CHECK(top[0].second == doctest::Approx(1.0 / z));

  // Equal logits keep label order.
  const LangIdModel tied = constant_model(3.0f, 1.0f, 1.0f);
  const auto tied_top = predict_topk(tied, "whatever", 3);
  CHECK(tied_top[1].first == "bb");
  CHECK(tied_top[2].first == "cc");

  CHECK_THROWS_AS(predict_topk(model, "   ", 1), Error);
  CHECK_THROWS_AS(predict_topk(model, "ok", 4), Error);
}

TEST_CASE("evaluation scores against a forced ranking") {
  // The model always predicts [aa, bb]: two aa items are right at rank 1,
  // the bb item only at rank 2, the cc item never.
  const LangIdModel model = constant_model(3.0f, 2.0f, 1.0f);
  const std::vector<TestItem> test = {
      {"aa", "s one", false},
      {"aa", "s two", false},
      {"bb", "s three", false},
      {"cc", "s four", false},
  };
  const LangIdEval eval = eval_langid(model, test);

  const LabelScores& aa = eval.per_label.at("aa");
  CHECK(aa.n == 2);
  CHECK(aa.p1 == doctest::Approx(1.0));
  CHECK(aa.f1 == doctest::Approx(1.0));
  CHECK(aa.p2 == doctest::Approx(0.5));  // hits / (k * n) = 2 / 4
  CHECK(aa.r2 == doctest::Approx(1.0));  // hits / n = 2 / 2
  CHECK(aa.f2 == doctest::Approx(2.0 / 3.0));

  const LabelScores& bb = eval.per_label.at("bb");
  CHECK(bb.p1 == doctest::Approx(0.0));
  CHECK(bb.p2 == doctest::Approx(0.5));  // 1 / (2 * 1)
  CHECK(bb.r2 == doctest::Approx(1.0));

  const LabelScores& cc = eval.per_label.at("cc");
  CHECK(cc.f2 == doctest::Approx(0.0));

  CHECK(eval.macro.n == 4);
  CHECK(eval.macro.f1 == doctest::Approx(1.0 / 3.0));
  CHECK(eval.macro.r2 == doctest::Approx(2.0 / 3.0));
  CHECK(eval.macro.f2 == doctest::Approx(4.0 / 9.0));

  // Top-1 is always aa, so the confusion mass sits in the first column.
  REQUIRE(eval.confusion.size() == 3);
  CHECK(eval.confusion[0] == std::vector<uint64_t>{2, 0, 0});
  CHECK(eval.confusion[1] == std::vector<uint64_t>{1, 0, 0});
  CHECK(eval.confusion[2] == std::vector<uint64_t>{1, 0, 0});

  CHECK(eval_csv(eval) ==
        "label,n,p@1,r@1,f@1,p@2,r@2,f@2\n"
        "aa,2,1.0000,1.0000,1.0000,0.5000,1.0000,0.6667\n"
        "bb,1,0.0000,0.0000,0.0000,0.5000,1.0000,0.6667\n"
        "cc,1,0.0000,0.0000,0.0000,0.0000,0.0000,0.0000\n"
        "macro,4,0.3333,0.3333,0.3333,0.3333,0.6667,0.4444\n");
  CHECK(confusion_csv(eval) ==
        "gold\\pred,aa,bb,cc\n"
        "aa,2,0,0\n"
        "bb,1,0,0\n"
        "cc,1,0,0\n");

  CHECK_THROWS_AS(eval_langid(model, {}), Error);
  CHECK_THROWS_AS(eval_langid(model, {{"zz", "s", false}}), Error);
}

TEST_CASE("two separable labels train to perfect held-out accuracy") {
  const TrainResult& result = toy().result;
  CHECK(result.model.labels == std::vector<std::string>{"alpha", "beta"});
  REQUIRE(result.test.size() == 16);  // 2 labels x (40 - floor(0.8*40))
  for (const auto& item : result.test) {
    CHECK_FALSE(item.noisy);
    CHECK(predict_topk(result.model, item.sentence, 1)[0].first == item.label);
  }
  CHECK(log_mentions(result.log,
                     "label alpha: 40 sentences (0 noisy), 32 train / 8 test"));
  CHECK(log_mentions(result.log, "epoch 0: avg loss"));
  CHECK(log_mentions(result.log, "epoch 24: avg loss"));

  const LangIdEval eval = eval_langid(result.model, result.test);
  CHECK(eval.macro.f1 == doctest::Approx(1.0));
  // In a two-label world the top-2 always contains the gold label.
  CHECK(eval.macro.p2 == doctest::Approx(0.5));
  CHECK(eval.macro.r2 == doctest::Approx(1.0));
  uint64_t diagonal = 0;
  for (size_t l = 0; l < 2; ++l) {
    uint64_t row = 0;
    for (const uint64_t c : eval.confusion[l]) row += c;
    CHECK(row == eval.per_label.at(eval.labels[l]).n);
    diagonal += eval.confusion[l][l];
  }
  CHECK(diagonal == 16);
}

TEST_CASE("evaluation over a single-label subset") {
  const TrainResult& result = toy().result;
  std::vector<TestItem> alpha_only;
  for (const auto& item : result.test) {
    if (item.label == "alpha") alpha_only.push_back(item);
  }
  const LangIdEval eval = eval_langid(result.model, alpha_only);
  CHECK(eval.per_label.at("beta").n == 0);
  CHECK(eval.macro.f1 == doctest::Approx(eval.per_label.at("alpha").f1));
}

TEST_CASE("model files round trip") {
  const LangIdModel& model = toy().result.model;
  TempDir dir;
  save_model(model, dir.file("m.bin"));
  const LangIdModel loaded = load_model(dir.file("m.bin"));
  CHECK(loaded.labels == model.labels);
  CHECK(loaded.buckets == model.buckets);
  CHECK(loaded.dim == model.dim);
  CHECK(loaded.embeddings == model.embeddings);
  CHECK(loaded.out_weights == model.out_weights);
  const std::string sentence = toy().result.test.front().sentence;
  CHECK(predict_topk(loaded, sentence, 2) == predict_topk(model, sentence, 2));
}

TEST_CASE("model load validation") {
  TempDir dir;
  write_file(dir.file("junk.bin"), "NOPE nope nope");
  CHECK_THROWS_AS(load_model(dir.file("junk.bin")), Error);

  std::string future(reinterpret_cast<const char*>("SNLI"), 4);
  future += std::string("\x02\x00\x00\x00", 4);  // unsupported version
  write_file(dir.file("future.bin"), future);
  CHECK_THROWS_AS(load_model(dir.file("future.bin")), Error);

  const LangIdModel model = constant_model(1.0f, 2.0f, 3.0f);
  save_model(model, dir.file("cut.bin"));
  std::filesystem::resize_file(dir.file("cut.bin"), 20);
  CHECK_THROWS_AS(load_model(dir.file("cut.bin")), Error);
}

TEST_CASE("training is deterministic in the seed") {
  std::map<std::string, LabelData> data;
  data["one"].clean = synthetic_sentences(12, 31, split_letters(U"abcd"));
  data["two"].clean = synthetic_sentences(12, 32, split_letters(U"wxyz"));
  TrainOptions options;
  options.setup = Setup::kClean;
  options.seed = 11;

  const TrainResult a = train_langid(data, options);
  const TrainResult b = train_langid(data, options);
  CHECK(a.model.embeddings == b.model.embeddings);
  CHECK(a.model.out_weights == b.model.out_weights);
  CHECK(a.log == b.log);
  REQUIRE(a.test.size() == b.test.size());
  for (size_t i = 0; i < a.test.size(); ++i) {
    CHECK(a.test[i].label == b.test[i].label);
    CHECK(a.test[i].sentence == b.test[i].sentence);
    CHECK(a.test[i].noisy == b.test[i].noisy);
  }

  options.seed = 12;
  const TrainResult c = train_langid(data, options);
  CHECK(a.model.embeddings != c.model.embeddings);
}

TEST_CASE("noisy setup falls back to clean for labels without noise") {
  std::map<std::string, LabelData> data;
  data["one"].clean = synthetic_sentences(12, 41, split_letters(U"abcd"));
  data["one"].noisy = synthetic_sentences(12, 42, split_letters(U"efgh"));
  data["two"].clean = synthetic_sentences(12, 43, split_letters(U"wxyz"));
  TrainOptions options;
  options.setup = Setup::kNoisy;
  options.seed = 5;

  const TrainResult result = train_langid(data, options);
  CHECK(log_mentions(result.log, "label two: no noisy data, using clean"));
  CHECK_FALSE(log_mentions(result.log, "label one: no noisy data"));
  for (const auto& item : result.test) {
    CHECK(item.noisy == (item.label == "one"));
  }
}

TEST_CASE("merged setup tops up with unused clean sentences") {
  std::map<std::string, LabelData> data;
  // Duplicate strings on purpose: the top-up must track indices, not text.
  data["pad"].clean = std::vector<std::string>(10, "aa bb cc aa");
  data["pad"].noisy = {"xx yy", "yy xx"};
  data["qq"].clean = synthetic_sentences(12, 51, split_letters(U"mnop"));
  data["rr"].clean = synthetic_sentences(11, 52, split_letters(U"stuv"));
  TrainOptions options;
  options.setup = Setup::kMerged;
  options.cap = 6;
  options.seed = 9;

  const TrainResult result = train_langid(data, options);
  CHECK(log_mentions(result.log, "label pad: topped up with 4 extra clean"));
  CHECK(log_mentions(result.log, "label qq: topped up with 6 extra clean"));
  CHECK(log_mentions(result.log, "label rr: shortfall, 11 of 12"));
  CHECK_FALSE(log_mentions(result.log, "label pad: shortfall"));
  CHECK_FALSE(log_mentions(result.log, "label qq: shortfall"));
  // pad and qq reach 12 sentences (3 test each); rr stops at 11 (3 test).
  CHECK(result.test.size() == 9);
}

TEST_CASE("training input validation") {
  std::map<std::string, LabelData> one_label;
  one_label["only"].clean = synthetic_sentences(12, 61, split_letters(U"ab"));
  CHECK_THROWS_AS(train_langid(one_label, TrainOptions{}), Error);

  std::map<std::string, LabelData> data;
  data["one"].clean = synthetic_sentences(12, 62, split_letters(U"abcd"));
  data["two"].clean = synthetic_sentences(12, 63, split_letters(U"wxyz"));
  TrainOptions bad_split;
  bad_split.split = 1.0;
  CHECK_THROWS_AS(train_langid(data, bad_split), Error);

  data["thin"].clean = {"a b", "c d", "e f"};  // below the 10-sentence floor
  CHECK_THROWS_AS(train_langid(data, TrainOptions{}), Error);
}

TEST_CASE("test item files round trip") {
  TempDir dir;
  const std::vector<TestItem> items = {
      {"ckb", "سڵاو باو", false},
      {"fas", "mar bil", true},
  };
  save_test_items(items, dir.file("t.tsv"));
  const auto loaded = load_test_items(dir.file("t.tsv"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].label == "ckb");
  CHECK(loaded[0].sentence == "سڵاو باو");
  CHECK_FALSE(loaded[0].noisy);
  CHECK(loaded[1].noisy);

  write_file(dir.file("bad.tsv"), "ckb\tx\n");
  CHECK_THROWS_AS(load_test_items(dir.file("bad.tsv")), ParseError);
  write_file(dir.file("bad2.tsv"), "ckb\t2\tsentence\n");
  CHECK_THROWS_AS(load_test_items(dir.file("bad2.tsv")), ParseError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace scriptnorm
