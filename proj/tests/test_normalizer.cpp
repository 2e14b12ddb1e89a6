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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "scriptnorm/error.hpp"
#include "scriptnorm/metrics.hpp"
#include "scriptnorm/noise.hpp"
#include "scriptnorm/normalizer.hpp"
#include "scriptnorm/rng.hpp"
#include "scriptnorm/textio.hpp"
#include "support/fixtures.hpp"

namespace scriptnorm {
namespace {

using testing::synthetic_sentences;
using testing::TempDir;

ChannelModel hand_channel(
    std::map<std::u32string, std::vector<ChannelEntry>> inverse) {
  ChannelModel channel;
  channel.inverse = std::move(inverse);
  return channel;
}

// Language model with no training text: every continuation is equally
// likely, so only channel weights and the lexicographic tie-break matter.
CharLM uniform_lm(const std::set<char32_t>& alphabet) {
  return train_char_lm({}, 2, 0.1, alphabet);
}

std::set<char32_t> channel_code_points(const ChannelModel& channel) {
  std::set<char32_t> cps;
  for (const auto& [key, row] : channel.inverse) {
    (void)row;
    for (const char32_t cp : key) cps.insert(cp);
  }
  return cps;
}

TEST_SUITE("normalizer") {

TEST_CASE("channel fitting inverts the matrix and adds identities") {
  CharAlignmentMatrix matrix;
  matrix.entries[U"y"] = {{U"x", 0.8, false}};
  matrix.identities[U"z"] = 1.0;
  const ChannelModel channel = fit_channel(matrix);
  CHECK(channel.self_weight == 1.0);
  CHECK(channel.matrix_sha256 == "-");
  REQUIRE(channel.inverse.size() == 3);

  // Noisy x may read as the clean y it came from, or stand for itself.
  const auto& x_row = channel.inverse.at(U"x");
  REQUIRE(x_row.size() == 2);
  CHECK(x_row[0].clean == U"x");
  CHECK(x_row[0].weight == 1.0);
  CHECK(x_row[1].clean == U"y");
  CHECK(x_row[1].weight == doctest::Approx(0.8));

  // Mentioned graphemes keep themselves even with no incoming replacement.
  const auto& y_row = channel.inverse.at(U"y");
  REQUIRE(y_row.size() == 1);
  CHECK(y_row[0].clean == U"y");
  REQUIRE(channel.inverse.count(U"z") == 1);
}

TEST_CASE("deletion targets have no noisy surface") {
  CharAlignmentMatrix matrix;
  matrix.entries[U"y"] = {{U"", 0.9, false}, {U"x", 0.8, false}};
  const ChannelModel channel = fit_channel(matrix);
  CHECK(channel.inverse.count(U"") == 0);
  CHECK(channel.inverse.size() == 2);  // x and y only
}

TEST_CASE("compound targets become compound keys") {
  CharAlignmentMatrix matrix;
  matrix.entries[U"a"] = {{U"xy", 0.9, false}};
  const ChannelModel channel = fit_channel(matrix, 0.5);
  const auto& row = channel.inverse.at(U"xy");
  REQUIRE(row.size() == 2);
  CHECK(row[0].clean == U"a");
  CHECK(row[0].weight == doctest::Approx(0.9));
  CHECK(row[1].clean == U"xy");
  CHECK(row[1].weight == 0.5);  // custom self weight
  CHECK(channel.inverse.count(U"x") == 0);  // no single-letter key invented
  CHECK(channel.max_key_size() == 2);
  CHECK(ChannelModel{}.max_key_size() == 0);
}

TEST_CASE("channel fitting validation") {
  CHECK_THROWS_AS(fit_channel(CharAlignmentMatrix{}), Error);
  CharAlignmentMatrix matrix;
  matrix.entries[U"y"] = {{U"x", 0.8, false}};
  CHECK_THROWS_AS(fit_channel(matrix, 0.0), Error);
}

TEST_CASE("character language model hand example") {
  const CharLM lm = train_char_lm({"ab"}, 2, 0.1);
  REQUIRE(lm.alphabet == std::set<char32_t>{U'a', U'b'});

  // One observation each of `a` after begin-of-sentence and `b` after `a`;
  // add-alpha over a two-letter alphabet.
  CHECK(lm.log_prob(U"", U'a') == doctest::Approx(std::log(1.1 / 1.2)));
  CHECK(lm.log_prob(U"a", U'b') == doctest::Approx(std::log(1.1 / 1.2)));
  CHECK(lm.log_prob(U"a", U'a') == doctest::Approx(std::log(0.1 / 1.2)));
  // Context is right-aligned: only the last order-1 code points count.
  CHECK(lm.log_prob(U"zzqa", U'b') == lm.log_prob(U"a", U'b'));
  // Unseen context backs off to the uniform smoothed distribution.
  CHECK(lm.log_prob(U"q", U'a') == doctest::Approx(std::log(0.5)));

  for (const std::u32string ctx : {U"", U"a", U"q"}) {
    double total = 0.0;
    for (const char32_t next : lm.alphabet) {
      total += std::exp(lm.log_prob(ctx, next));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK(lm.score_append(U"", U"ab") ==
        doctest::Approx(lm.log_prob(U"", U'a') + lm.log_prob(U"a", U'b')));

  // Extra alphabet entries widen the smoothing denominator.
  const CharLM wider = train_char_lm({"ab"}, 2, 0.1, {U'c'});
  CHECK(wider.log_prob(U"", U'a') == doctest::Approx(std::log(1.1 / 1.3)));

  // Longer orders pad with begin sentinels.
  const CharLM tri = train_char_lm({"ab", ""}, 3, 0.1);
  CHECK(tri.log_prob(U"", U'a') == doctest::Approx(std::log(1.1 / 1.2)));
  CHECK(tri.log_prob(U"a", U'b') == doctest::Approx(std::log(1.1 / 1.2)));

  CHECK_THROWS_AS(train_char_lm({"ab"}, 1, 0.1), Error);
  CHECK_THROWS_AS(train_char_lm({"ab"}, 2, 0.0), Error);
}

TEST_CASE("decoder keeps whitespace and unknown letters verbatim") {
  const ChannelModel channel = hand_channel({{U"n", {{U"x", 1.0}}}});
  const CharLM lm = uniform_lm({U'n', U'x', U'z'});
  CHECK(beam_normalize("n z n", channel, lm) == "x z x");
  CHECK(beam_normalize("  n", channel, lm) == "  x");
  CHECK(beam_normalize("zzz", channel, lm) == "zzz");
  CHECK(beam_normalize("", channel, lm).empty());
  CHECK_THROWS_AS(beam_normalize("n", channel, lm, 0), Error);
}

TEST_CASE("decoder picks the longest channel key at each position") {
  const ChannelModel channel = hand_channel({
      {U"n", {{U"x", 1.0}}},
      {U"nm", {{U"y", 1.0}}},
  });
  const CharLM lm = uniform_lm({U'n', U'm', U'x', U'y'});
  CHECK(beam_normalize("nm", channel, lm) == "y");
  CHECK(beam_normalize("nmn", channel, lm) == "yx");
  CHECK(beam_normalize("mn", channel, lm) == "mx");  // m alone has no key
}

TEST_CASE("decoder applies deletion candidates") {
  const ChannelModel channel = hand_channel({{U"n", {{U"", 1.0}}}});
  const CharLM lm = uniform_lm({U'a', U'b', U'n'});
  CHECK(beam_normalize("anb", channel, lm) == "ab");
}

TEST_CASE("score ties break lexicographically") {
  const ChannelModel channel =
      hand_channel({{U"n", {{U"b", 1.0}, {U"a", 1.0}}}});
  const CharLM lm = uniform_lm({U'a', U'b', U'n'});
  CHECK(beam_normalize("n", channel, lm) == "a");
}

TEST_CASE("bijective noise at full strength decodes back exactly") {
  const CharAlignmentMatrix matrix = testing::bijective_matrix();
  const ChannelModel channel = fit_channel(matrix);
  const auto clean =
      synthetic_sentences(20, 3301, testing::bijective_alphabet());
  const CharLM lm = train_char_lm(clean, 5, 0.1, channel_code_points(channel));
  for (size_t i = 0; i < clean.size(); ++i) {
    Rng rng(derive_seed(900, 100, i));
    const std::string noisy = inject_noise(clean[i], matrix, 100, rng);
    REQUIRE(noisy != clean[i]);
    CHECK(beam_normalize(noisy, channel, lm) == clean[i]);
  }
}

TEST_CASE("decoding beats leaving ambiguous noise in place") {
  const CharAlignmentMatrix matrix = testing::many_alternative_matrix();
  const ChannelModel channel = fit_channel(matrix);
  const auto clean =
      synthetic_sentences(40, 3302, testing::many_alternative_alphabet());
  const CharLM lm = train_char_lm(clean, 5, 0.1, channel_code_points(channel));

  std::vector<std::string> noisy(clean.size());
  for (size_t i = 0; i < clean.size(); ++i) {
    Rng rng(derive_seed(901, 60, i));
    noisy[i] = inject_noise(clean[i], matrix, 60, rng);
  }
  const std::vector<std::string> decoded =
      normalize_lines(noisy, channel, lm, 8, 1);
  CHECK(corpus_bleu(decoded, clean) > corpus_bleu(noisy, clean));
  CHECK(chrf_score(decoded, clean) > chrf_score(noisy, clean));

  const std::vector<std::string> threaded =
      normalize_lines(noisy, channel, lm, 8, 4);
  CHECK(threaded == decoded);
}

TEST_CASE("channel files round trip") {
  TempDir dir;
  ChannelModel channel;
  channel.self_weight = 0.7;
  channel.matrix_sha256 = "cafe01";
  channel.inverse[U"n"] = {{U"ab", 0.5}, {U"n", 0.7}};
  channel.inverse[U"xy"] = {{U"", 0.25}, {U"q", 1.0}};
  save_channel(channel, dir.file("c.tsv"));

  const std::string text = read_file(dir.file("c.tsv"));
  CHECK(text.find("# self_weight: 0.7") != std::string::npos);
  CHECK(text.find("# matrix_sha256: cafe01") != std::string::npos);
  CHECK(text.find("U+006E\tU+0061+U+0062\t0.5") != std::string::npos);
  CHECK(text.find("U+0078+U+0079\t∅\t0.25") != std::string::npos);

  const ChannelModel loaded = load_channel(dir.file("c.tsv"));
  CHECK(loaded.self_weight == 0.7);
  CHECK(loaded.matrix_sha256 == "cafe01");
  REQUIRE(loaded.inverse.size() == 2);
  const auto& n_row = loaded.inverse.at(U"n");
  REQUIRE(n_row.size() == 2);
  CHECK(n_row[0].clean == U"ab");
  CHECK(n_row[0].weight == 0.5);
  CHECK(n_row[1].clean == U"n");
  CHECK(n_row[1].weight == 0.7);
  const auto& xy_row = loaded.inverse.at(U"xy");
  REQUIRE(xy_row.size() == 2);
  CHECK(xy_row[0].clean.empty());
  CHECK(xy_row[0].weight == 0.25);
}

TEST_CASE("channel load validation") {
  TempDir dir;
  const auto expect_reject = [&](const std::string& body) {
    write_file(dir.file("c.tsv"), body);
    CHECK_THROWS_AS(load_channel(dir.file("c.tsv")), ParseError);
  };
  expect_reject("U+006E\tU+0061\n");            // missing weight
  expect_reject("∅\tU+0061\t0.5\n");            // empty noisy side
  expect_reject("U+006E\tU+0061\tx\n");         // unparseable weight
  expect_reject("U+006E\tU+0061\t0\n");         // weight must be positive
  expect_reject("U+GG\tU+0061\t0.5\n");         // malformed code point token
  expect_reject("X+0061\tU+0061\t0.5\n");       // malformed code point token
  expect_reject("# only comments\n");           // no entries at all

  write_file(dir.file("c.tsv"), "# self_weight: 2\nU+006E\tU+0061\t0.5\n");
  CHECK(load_channel(dir.file("c.tsv")).self_weight == 2.0);
}

TEST_CASE("language model files round trip") {
  TempDir dir;
  const CharLM lm = train_char_lm({"ab", "ba", "aab"}, 3, 0.1);
  save_lm(lm, dir.file("lm.tsv"));
  const CharLM loaded = load_lm(dir.file("lm.tsv"));
  CHECK(loaded.order == lm.order);
  CHECK(loaded.alpha == lm.alpha);
  CHECK(loaded.alphabet == lm.alphabet);
  CHECK(loaded.gram_counts == lm.gram_counts);
  CHECK(loaded.context_counts == lm.context_counts);
  CHECK(loaded.log_prob(U"a", U'b') == lm.log_prob(U"a", U'b'));
  CHECK(loaded.log_prob(U"", U'a') == lm.log_prob(U"", U'a'));
}

TEST_CASE("language model load validation") {
  TempDir dir;
  const auto expect_reject = [&](const std::string& body) {
    write_file(dir.file("lm.tsv"), body);
    CHECK_THROWS_AS(load_lm(dir.file("lm.tsv")), ParseError);
  };
  expect_reject("alpha\t0.1\n");                       // no order row
  expect_reject("order\t1\n");                         // order too small
  expect_reject("order\t3\nalpha\t0\n");               // alpha not positive
  expect_reject("order\t3\nalphabet\tU+0061+U+0062\n");  // two code points
  expect_reject("order\t2\ngram\tU+0061+U+0062\t0\n");   // zero count
  expect_reject("order\t3\nbogus\tx\n");               // unknown row type
  expect_reject("order\t3\ngram\tU+0061+U+0062\t4\n");   // length != order
}

TEST_CASE("hypothesis files score like in-memory lines") {
  TempDir dir;
  write_lines(dir.file("hyp.txt"), {"aa bb", "cc dd"});
  write_lines(dir.file("ref.txt"), {"aa bb", "cc dd"});
  const EvalReport report =
      score_hypotheses(dir.file("hyp.txt"), dir.file("ref.txt"));
  CHECK(report.bleu == doctest::Approx(100.0));
  CHECK(report.seq_acc == doctest::Approx(1.0));
  CHECK(report.n_pairs == 2);
}

}  // TEST_SUITE

}  // namespace
}  // namespace scriptnorm
