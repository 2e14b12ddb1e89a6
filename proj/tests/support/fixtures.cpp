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

#include "support/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>

#include "scriptnorm/error.hpp"
#include "scriptnorm/noise.hpp"
#include "scriptnorm/rng.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm::testing {

namespace {

// Language pairs whose shipped rules feed the noisy pools of the
// language-identification corpus: each contact language towards the dominant
// script it is usually mixed with.
const std::vector<std::pair<std::string, std::string>> kNoisePairs = {
    {"azb", "fas"}, {"glk", "fas"}, {"mzn", "fas"}, {"ckb", "fas"},
    {"kmr", "fas"}, {"hac", "fas"}, {"kas", "urd"}, {"snd", "urd"},
};

MatrixEntry count_entry(const char32_t target, double score) {
  MatrixEntry entry;
  entry.target = std::u32string(1, target);
  entry.score = score;
  entry.from_rule = false;
  return entry;
}

MatrixEntry rule_entry(const char32_t target) {
  MatrixEntry entry;
  entry.target = std::u32string(1, target);
  entry.score = 1.0;
  entry.from_rule = true;
  return entry;
}

uint64_t label_seed(const std::string& label, uint64_t seed) {
  uint64_t mixed = seed;
  for (const char c : label) {
    mixed = derive_seed(mixed, static_cast<unsigned char>(c), 0x1abe1);
  }
  return mixed;
}

// A vocabulary of unique pseudo-words over `alphabet`.
std::vector<std::string> make_vocab(size_t vocab_size,
                                    const std::vector<Grapheme>& alphabet,
                                    Rng& rng) {
  std::vector<std::string> vocab;
  std::set<std::string> seen;
  while (vocab.size() < vocab_size) {
    const size_t len = 2 + rng.next_below(6);
    std::u32string word;
    for (size_t i = 0; i < len; ++i) {
      word += alphabet[rng.next_below(alphabet.size())];
    }
    std::string encoded = encode_utf8(word);
    if (seen.insert(encoded).second) vocab.push_back(std::move(encoded));
  }
  return vocab;
}

// Index draw biased towards the front of the vocabulary (roughly Zipfian).
size_t biased_index(size_t size, Rng& rng) {
  const double u = rng.next_unit();
  const size_t idx = static_cast<size_t>(u * u * static_cast<double>(size));
  return std::min(idx, size - 1);
}

std::vector<Grapheme> letter_stock(const ScriptInventory& inv) {
  return {inv.chars.begin(), inv.chars.end()};
}

std::vector<Grapheme> shared_letter_stock(const ScriptInventory& a,
                                          const ScriptInventory& b,
                                          const ScriptInventory& c) {
  std::vector<Grapheme> shared;
  for (const Grapheme& g : a.chars) {
    if (b.contains(g) && c.contains(g)) shared.push_back(g);
  }
  return shared;
}

}  // namespace

std::string repo_path(const std::string& relative) {
  return std::string(SCRIPTNORM_SOURCE_DIR) + "/" + relative;
}

ScriptInventory repo_inventory(const std::string& code) {
  return load_inventory(repo_path("data/inventories/" + code + ".tsv"));
}

MappingRuleSet repo_rules(const std::string& src, const std::string& dom) {
  return compile_rules(repo_path("data/rules/" + src + "_" + dom + ".tsv"),
                       repo_inventory(src), repo_inventory(dom));
}

CharAlignmentMatrix repo_rule_matrix(const std::string& src,
                                     const std::string& dom) {
  return build_alignment_matrix({}, repo_rules(src, dom), repo_inventory(src),
                                repo_inventory(dom));
}

TempDir::TempDir() {
  std::string pattern =
      (std::filesystem::temp_directory_path() / "scriptnorm_test_XXXXXX")
          .string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw Error("mkdtemp failed for " + pattern);
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::file(const std::string& name) const {
  return path_ + "/" + name;
}

std::vector<Grapheme> split_letters(const std::u32string& cps) {
  std::vector<Grapheme> letters;
  letters.reserve(cps.size());
  for (const char32_t cp : cps) letters.emplace_back(1, cp);
  return letters;
}

CharAlignmentMatrix bijective_matrix() {
  CharAlignmentMatrix matrix;
  matrix.src_lang = "src";
  matrix.dom_lang = "dom";
  const std::u32string sources = U"abcdefghijkl";
  const std::u32string targets = U"mnopqrstuvwx";
  for (size_t i = 0; i < sources.size(); ++i) {
    matrix.entries[std::u32string(1, sources[i])] = {rule_entry(targets[i])};
  }
  return matrix;
}

std::vector<Grapheme> bijective_alphabet() {
  return split_letters(U"abcdefghijkl");
}

CharAlignmentMatrix many_alternative_matrix() {
  CharAlignmentMatrix matrix;
  matrix.src_lang = "src";
  matrix.dom_lang = "dom";
  // Chained targets: r is reachable from both a and b, s from both b and c,
  // and so on, so an observed letter rarely pins down its source.
  matrix.entries[U"a"] = {count_entry(U'q', 0.8), count_entry(U'r', 0.6)};
  matrix.entries[U"b"] = {count_entry(U'r', 0.8), count_entry(U's', 0.6)};
  matrix.entries[U"c"] = {count_entry(U's', 0.8), count_entry(U't', 0.6)};
  matrix.entries[U"d"] = {count_entry(U't', 0.7), count_entry(U'u', 0.5),
                          count_entry(U'v', 0.5)};
  matrix.entries[U"e"] = {count_entry(U'u', 0.8), count_entry(U'v', 0.6)};
  matrix.entries[U"f"] = {count_entry(U'v', 0.8), count_entry(U'w', 0.6)};
  matrix.entries[U"g"] = {count_entry(U'w', 0.7), count_entry(U'x', 0.5),
                          count_entry(U'y', 0.5)};
  matrix.entries[U"h"] = {count_entry(U'x', 0.8), rule_entry(U'z')};
  return matrix;
}

std::vector<Grapheme> many_alternative_alphabet() {
  // i and j match no matrix key, so some of every word survives any noise.
  return split_letters(U"abcdefghij");
}

std::vector<std::string> synthetic_sentences(
    size_t n_sentences, uint64_t seed, const std::vector<Grapheme>& alphabet,
    size_t vocab_size) {
  Rng rng(seed);
  const std::vector<std::string> vocab = make_vocab(vocab_size, alphabet, rng);
  std::vector<std::string> sentences;
  sentences.reserve(n_sentences);
  for (size_t s = 0; s < n_sentences; ++s) {
    const size_t len = 5 + rng.next_below(8);
    std::string sentence;
    for (size_t w = 0; w < len; ++w) {
      if (w > 0) sentence += ' ';
      sentence += vocab[biased_index(vocab.size(), rng)];
    }
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

std::map<std::string, LabelData> langid_desk_corpus(size_t clean_per_label,
                                                    uint64_t seed) {
  const std::vector<std::vector<std::string>> groups = {
      {"azb", "glk", "mzn"}, {"ckb", "kmr", "hac"}};

  std::map<std::string, std::vector<std::string>> shared_pool;
  for (const auto& group : groups) {
    const ScriptInventory a = repo_inventory(group[0]);
    const ScriptInventory b = repo_inventory(group[1]);
    const ScriptInventory c = repo_inventory(group[2]);
    Rng rng(label_seed(group[0] + group[1] + group[2], seed));
    const auto shared_words =
        make_vocab(40, shared_letter_stock(a, b, c), rng);
    for (const auto& code : group) shared_pool[code] = shared_words;
  }

  std::map<std::string, LabelData> data;
  for (const std::string& code : kLanguageCodes) {
    Rng rng(label_seed(code, seed));
    const auto specific =
        make_vocab(120, letter_stock(repo_inventory(code)), rng);
    const auto shared_it = shared_pool.find(code);

    std::vector<std::string>& clean = data[code].clean;
    clean.reserve(clean_per_label);
    for (size_t s = 0; s < clean_per_label; ++s) {
      const size_t len = 6 + rng.next_below(7);
      std::string sentence;
      for (size_t w = 0; w < len; ++w) {
        if (w > 0) sentence += ' ';
        if (shared_it != shared_pool.end() && rng.next_unit() < 0.35) {
          sentence += shared_it->second[biased_index(
              shared_it->second.size(), rng)];
        } else {
          sentence += specific[biased_index(specific.size(), rng)];
        }
      }
      clean.push_back(std::move(sentence));
    }
  }

  for (const auto& [src, dom] : kNoisePairs) {
    const CharAlignmentMatrix matrix = repo_rule_matrix(src, dom);
    const auto datasets = generate_parallel_datasets(
        data[src].clean, matrix, label_seed(src + dom, seed));
    for (const auto& dataset : datasets) {
      if (dataset.level != kAllLevels) continue;
      for (const auto& pair : dataset.pairs) {
        data[src].noisy.push_back(pair.noisy);
      }
    }
  }
  return data;
}

}  // namespace scriptnorm::testing
