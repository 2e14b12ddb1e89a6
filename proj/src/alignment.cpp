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

#include "scriptnorm/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <thread>

#include "scriptnorm/error.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

NwAlignment needleman_wunsch(const std::vector<Grapheme>& a,
                             const std::vector<Grapheme>& b,
                             const AlignmentParams& params) {
  if (a.empty() || b.empty()) {
    throw Error("needleman_wunsch: empty sequence");
  }
  const size_t n = a.size();
  const size_t m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 1; i <= n; ++i) d[i][0] = static_cast<int>(i) * params.gap;
  for (size_t j = 1; j <= m; ++j) d[0][j] = static_cast<int>(j) * params.gap;
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const int sub = (a[i - 1] == b[j - 1]) ? params.match : params.mismatch;
      d[i][j] = std::max({d[i - 1][j - 1] + sub, d[i - 1][j] + params.gap,
                          d[i][j - 1] + params.gap});
    }
  }

  NwAlignment out;
  out.score = d[n][m];
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    const int sub =
        (i > 0 && j > 0 && a[i - 1] == b[j - 1]) ? params.match
                                                 : params.mismatch;
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + sub) {
      out.columns.push_back({a[i - 1], b[j - 1]});
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + params.gap) {
      out.columns.push_back({a[i - 1], Grapheme()});
      --i;
    } else {
      out.columns.push_back({Grapheme(), b[j - 1]});
      --j;
    }
  }
  std::reverse(out.columns.begin(), out.columns.end());
  return out;
}

std::string format_alignment(const NwAlignment& alignment) {
  std::string out;
  for (size_t i = 0; i < alignment.columns.size(); ++i) {
    const auto& col = alignment.columns[i];
    if (i > 0) out += ' ';
    out += col.src_gap() ? "−" : encode_utf8(col.src);
    out += '/';
    out += col.dst_gap() ? "−" : encode_utf8(col.dst);
  }
  return out;
}

namespace {

std::u32string flatten(const std::vector<Grapheme>& graphemes) {
  std::u32string out;
  for (const auto& g : graphemes) out += g;
  return out;
}

// Per-position alternatives for variant enumeration: a rule match at a
// grapheme position offers its targets; a diacritic additionally offers its
// own deletion. Alternatives equal to the consumed span are skipped — the
// "keep" transition covers them.
struct Alternative {
  size_t span;              // graphemes consumed
  std::u32string replaced;  // code points emitted
};

std::vector<std::vector<Alternative>> collect_alternatives(
    const std::vector<Grapheme>& word, const MappingRuleSet& rules,
    const ScriptInventory& src_inv) {
  const size_t n = word.size();
  std::vector<std::vector<Alternative>> alts(n);
  const auto add = [&](size_t pos, size_t span, const std::u32string& cps) {
    std::u32string original;
    for (size_t s = 0; s < span; ++s) original += word[pos + s];
    if (cps == original) return;
    for (const auto& existing : alts[pos]) {
      if (existing.span == span && existing.replaced == cps) return;
    }
    alts[pos].push_back({span, cps});
  };

  for (size_t pos = 0; pos < n; ++pos) {
    for (const auto& rule : rules.rules) {
      const size_t span = rule.source.size();
      if (pos + span > n) continue;
      if (rule.position == RulePosition::kWordInitial && pos != 0) continue;
      if (rule.position == RulePosition::kWordFinal && pos + span != n) {
        continue;
      }
      bool match = true;
      for (size_t s = 0; s < span; ++s) {
        if (word[pos + s] != rule.source[s]) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      for (const auto& target : rule.targets) {
        add(pos, span, flatten(target));
      }
    }
    if (src_inv.is_diacritic(word[pos])) {
      add(pos, 1, std::u32string());
    }
  }
  return alts;
}

}  // namespace

std::vector<SpellingPair> extract_spelling_pairs(
    const Vocabulary& src_vocab, const std::set<std::string>& dom_lexicon,
    const MappingRuleSet& rules, const ScriptInventory& src_inv,
    PairExtractionStats* stats) {
  if (dom_lexicon.empty()) {
    throw Error("extract_spelling_pairs: empty dominant lexicon");
  }

  std::vector<SpellingPair> pairs;
  for (const auto& [word, count] : src_vocab.entries) {
    (void)count;
    if (stats) ++stats->words_scanned;
    const std::vector<Grapheme> graphemes =
        src_inv.segment(decode_utf8(word));
    if (graphemes.empty()) continue;
    const auto alts = collect_alternatives(graphemes, rules, src_inv);

    // 0-1 BFS over (position, emitted prefix): keeping a grapheme costs 0,
    // any substitution costs 1, so completed variants appear in order of
    // fewest substitutions.
    struct State {
      size_t pos;
      std::u32string prefix;
      size_t changes;
    };
    std::deque<State> queue;
    queue.push_back({0, std::u32string(), 0});
    std::set<std::string> found;
    size_t generated = 0;
    bool capped = false;
    while (!queue.empty()) {
      if (generated >= kVariantCap) {
        capped = true;
        break;
      }
      const State state = queue.front();
      queue.pop_front();
      if (state.pos == graphemes.size()) {
        ++generated;
        if (stats) ++stats->variants_generated;
        const std::string variant = encode_utf8(state.prefix);
        if (dom_lexicon.count(variant) && found.insert(variant).second) {
          // A variant reached without any substitution is the word itself:
          // a shared dictionary entry rather than a rule-derived respelling.
          pairs.push_back({word, variant,
                           state.changes == 0
                               ? SpellingPair::Provenance::kDictionary
                               : SpellingPair::Provenance::kRuleDerived});
        }
        continue;
      }
      queue.push_front({state.pos + 1, state.prefix + graphemes[state.pos],
                        state.changes});
      for (const auto& alt : alts[state.pos]) {
        queue.push_back({state.pos + alt.span, state.prefix + alt.replaced,
                         state.changes + 1});
      }
    }
    if (capped && stats) ++stats->words_capped;
    if (stats) stats->pairs_emitted += found.size();
  }
  return pairs;
}

void save_pairs(const std::vector<SpellingPair>& pairs,
                const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const auto& pair : pairs) {
    const char* origin =
        pair.provenance == SpellingPair::Provenance::kRuleDerived
            ? "rule_derived"
            : "dictionary";
    lines.push_back(pair.src_word + "\t" + pair.dom_word + "\t" + origin);
  }
  write_lines(path, lines);
}

std::vector<SpellingPair> load_pairs(const std::string& path) {
  std::vector<SpellingPair> pairs;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    if (lines[idx].empty()) continue;
    const auto fields = split_tsv(lines[idx]);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, idx + 1, "expected `src<TAB>dom<TAB>origin`");
    }
    SpellingPair pair;
    pair.src_word = fields[0];
    pair.dom_word = fields[1];
    if (fields[2] == "rule_derived") {
      pair.provenance = SpellingPair::Provenance::kRuleDerived;
    } else if (fields[2] == "dictionary") {
      pair.provenance = SpellingPair::Provenance::kDictionary;
    } else {
      throw ParseError(path, idx + 1, "unknown origin `" + fields[2] + "`");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

size_t CharAlignmentMatrix::max_key_size() const {
  size_t longest = 0;
  for (const auto& [key, row] : entries) {
    (void)row;
    longest = std::max(longest, key.size());
  }
  return longest;
}

namespace {

using CountMap = std::map<std::u32string, std::map<std::u32string, uint64_t>>;

void count_pair_range(const std::vector<SpellingPair>& pairs, size_t begin,
                      size_t end, const ScriptInventory& src_inv,
                      const ScriptInventory& dom_inv, CountMap* counts) {
  for (size_t i = begin; i < end; ++i) {
    const auto src = src_inv.segment(decode_utf8(pairs[i].src_word));
    const auto dom = dom_inv.segment(decode_utf8(pairs[i].dom_word));
    if (src.empty() || dom.empty()) continue;
    const NwAlignment alignment = needleman_wunsch(src, dom);
    for (const auto& col : alignment.columns) {
      if (col.src_gap() || col.dst_gap()) continue;
      ++(*counts)[col.src][col.dst];
    }
  }
}

}  // namespace

CharAlignmentMatrix build_alignment_matrix(
    const std::vector<SpellingPair>& pairs, const MappingRuleSet& rules,
    const ScriptInventory& src_inv, const ScriptInventory& dom_inv,
    int threads) {
  if (pairs.empty() && rules.rules.empty()) {
    throw Error("build_alignment_matrix: no pairs and no rules");
  }

  CountMap counts;
  if (threads <= 1 || pairs.size() < 2) {
    count_pair_range(pairs, 0, pairs.size(), src_inv, dom_inv, &counts);
  } else {
    const size_t workers =
        std::min<size_t>(static_cast<size_t>(threads), pairs.size());
    std::vector<CountMap> partial(workers);
    std::vector<std::thread> pool;
    const size_t chunk = (pairs.size() + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      const size_t begin = w * chunk;
      const size_t end = std::min(pairs.size(), begin + chunk);
      pool.emplace_back(count_pair_range, std::cref(pairs), begin, end,
                        std::cref(src_inv), std::cref(dom_inv), &partial[w]);
    }
    for (auto& t : pool) t.join();
    for (const auto& part : partial) {
      for (const auto& [src, row] : part) {
        for (const auto& [dst, c] : row) counts[src][dst] += c;
      }
    }
  }

  CharAlignmentMatrix matrix;
  matrix.src_lang = rules.src_lang.empty() ? src_inv.lang : rules.src_lang;
  matrix.dom_lang = rules.dom_lang.empty() ? dom_inv.lang : rules.dom_lang;

  for (const auto& [src, row] : counts) {
    double norm_sq = 0.0;
    for (const auto& [dst, c] : row) {
      (void)dst;
      norm_sq += static_cast<double>(c) * static_cast<double>(c);
    }
    const double norm = std::sqrt(norm_sq);
    for (const auto& [dst, c] : row) {
      const double score = static_cast<double>(c) / norm;
      if (score < kScoreFloor) continue;
      matrix.entries[src].push_back({dst, score, false});
    }
  }

  // Rules ride on top of the counts with certainty 1; positions flatten
  // away because the matrix keys carry no word context.
  for (const auto& rule : rules.rules) {
    const std::u32string key = flatten(rule.source);
    auto& row = matrix.entries[key];
    for (const auto& target : rule.targets) {
      const std::u32string cps = flatten(target);
      bool found = false;
      for (auto& entry : row) {
        if (entry.target == cps) {
          entry.score = 1.0;
          entry.from_rule = true;
          found = true;
          break;
        }
      }
      if (!found) row.push_back({cps, 1.0, true});
    }
  }

  for (auto it = matrix.entries.begin(); it != matrix.entries.end();) {
    auto& row = it->second;
    for (auto entry = row.begin(); entry != row.end();) {
      if (entry->target == it->first) {
        matrix.identities[it->first] = entry->score;
        entry = row.erase(entry);
      } else {
        ++entry;
      }
    }
    if (row.empty()) {
      it = matrix.entries.erase(it);
    } else {
      std::sort(row.begin(), row.end(),
                [](const MatrixEntry& a, const MatrixEntry& b) {
                  return a.target < b.target;
                });
      ++it;
    }
  }
  return matrix;
}

namespace {

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

constexpr const char* kDeletionMark = "∅";

}  // namespace

void save_matrix(const CharAlignmentMatrix& matrix, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("# pair: " + matrix.src_lang + " " + matrix.dom_lang);
  for (const auto& [src, row] : matrix.entries) {
    for (const auto& entry : row) {
      lines.push_back(
          encode_utf8(src) + "\t" +
          (entry.target.empty() ? kDeletionMark : encode_utf8(entry.target)) +
          "\t" + format_score(entry.score) + "\t" +
          (entry.from_rule ? "rule" : "count"));
    }
  }
  write_lines(path, lines);

  std::vector<std::string> identity_lines;
  for (const auto& [src, score] : matrix.identities) {
    identity_lines.push_back(encode_utf8(src) + "\t" + format_score(score));
  }
  write_lines(path + ".identity.tsv", identity_lines);
}

CharAlignmentMatrix load_matrix(const std::string& path) {
  CharAlignmentMatrix matrix;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& line = lines[idx];
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string header = trim(line.substr(1));
      if (header.rfind("pair:", 0) == 0) {
        const auto rest = trim(header.substr(5));
        const size_t space = rest.find(' ');
        if (space != std::string::npos) {
          matrix.src_lang = rest.substr(0, space);
          matrix.dom_lang = trim(rest.substr(space + 1));
        }
      }
      continue;
    }
    const auto fields = split_tsv(line);
    if (fields.size() != 4) {
      throw ParseError(path, idx + 1,
                       "expected `src<TAB>target<TAB>score<TAB>origin`");
    }
    MatrixEntry entry;
    if (fields[1] != kDeletionMark) entry.target = decode_utf8(fields[1]);
    try {
      entry.score = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(path, idx + 1, "bad score `" + fields[2] + "`");
    }
    if (entry.score <= 0.0 || entry.score > 1.0) {
      throw ParseError(path, idx + 1, "score outside (0, 1]");
    }
    if (fields[3] == "rule") {
      entry.from_rule = true;
    } else if (fields[3] == "count") {
      entry.from_rule = false;
    } else {
      throw ParseError(path, idx + 1, "unknown origin `" + fields[3] + "`");
    }
    matrix.entries[decode_utf8(fields[0])].push_back(std::move(entry));
  }

  const std::string identity_path = path + ".identity.tsv";
  std::vector<std::string> identity_lines;
  try {
    identity_lines = read_lines(identity_path);
  } catch (const Error&) {
    identity_lines.clear();  // sidecar is optional
  }
  for (size_t idx = 0; idx < identity_lines.size(); ++idx) {
    if (identity_lines[idx].empty()) continue;
    const auto fields = split_tsv(identity_lines[idx]);
    if (fields.size() != 2) {
      throw ParseError(identity_path, idx + 1, "expected `src<TAB>score`");
    }
    matrix.identities[decode_utf8(fields[0])] = std::stod(fields[1]);
  }
  return matrix;
}

}  // namespace scriptnorm
