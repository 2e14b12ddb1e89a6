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

#include "scriptnorm/inventory.hpp"

#include <algorithm>
#include <map>

#include "scriptnorm/error.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

const std::vector<std::string> kLanguageCodes = {
    "azb", "mzn", "glk", "ckb", "kmr", "hac",
    "kas", "snd", "fas", "arb", "urd"};

bool is_known_language(const std::string& code) {
  return std::find(kLanguageCodes.begin(), kLanguageCodes.end(), code) !=
         kLanguageCodes.end();
}

namespace {

// Parses one `U+XXXX` or `U+XXXX+U+YYYY` token into a grapheme.
Grapheme parse_grapheme_token(const std::string& token, const std::string& file,
                              size_t line) {
  Grapheme g;
  size_t i = 0;
  while (i < token.size()) {
    if (token.compare(i, 2, "U+") != 0) {
      throw ParseError(file, line, "malformed grapheme token `" + token + "`");
    }
    i += 2;
    char32_t cp = 0;
    size_t digits = 0;
    while (i < token.size() && token[i] != '+') {
      const char c = token[i];
      unsigned v;
      if (c >= '0' && c <= '9') {
        v = c - '0';
      } else if (c >= 'A' && c <= 'F') {
        v = c - 'A' + 10;
      } else if (c >= 'a' && c <= 'f') {
        v = c - 'a' + 10;
      } else {
        throw ParseError(file, line,
                         "malformed grapheme token `" + token + "`");
      }
      cp = (cp << 4) | v;
      ++digits;
      ++i;
    }
    if (digits < 4 || digits > 6 || cp > 0x10FFFF) {
      throw ParseError(file, line, "malformed grapheme token `" + token + "`");
    }
    g.push_back(cp);
    if (i < token.size()) ++i;  // skip '+' between code points
  }
  if (g.empty() || g.size() > 2) {
    throw ParseError(file, line,
                     "grapheme must be 1-2 code points: `" + token + "`");
  }
  return g;
}

// Space-separated grapheme tokens -> grapheme sequence.
std::vector<Grapheme> parse_grapheme_sequence(const std::string& field,
                                              const std::string& file,
                                              size_t line) {
  std::vector<Grapheme> seq;
  size_t pos = 0;
  while (pos < field.size()) {
    while (pos < field.size() && field[pos] == ' ') ++pos;
    if (pos >= field.size()) break;
    size_t end = field.find(' ', pos);
    if (end == std::string::npos) end = field.size();
    seq.push_back(parse_grapheme_token(field.substr(pos, end - pos), file, line));
    pos = end;
  }
  if (seq.empty()) throw ParseError(file, line, "empty grapheme sequence");
  return seq;
}

std::string strip_comment(const std::string& line) {
  const size_t hash = line.find('#');
  std::string s = (hash == std::string::npos) ? line : line.substr(0, hash);
  // Trim trailing spaces/tabs left behind by an inline comment.
  size_t e = s.size();
  while (e > 0 && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(0, e);
}

}  // namespace

std::vector<Grapheme> ScriptInventory::segment(
    const std::u32string& word) const {
  std::vector<Grapheme> out;
  size_t i = 0;
  while (i < word.size()) {
    if (i + 1 < word.size()) {
      Grapheme two{word[i], word[i + 1]};
      if (chars.count(two)) {
        out.push_back(std::move(two));
        i += 2;
        continue;
      }
    }
    out.push_back(Grapheme(1, word[i]));
    ++i;
  }
  return out;
}

ScriptInventory load_inventory(const std::string& path) {
  ScriptInventory inv;
  bool saw_lang = false;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const size_t lineno = idx + 1;
    const std::string line = strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto fields = split_tsv(line);
    if (fields.size() != 2) {
      throw ParseError(path, lineno, "expected `key<TAB>value`");
    }
    const std::string& key = fields[0];
    const std::string& value = fields[1];
    if (key == "lang") {
      if (!is_known_language(value)) {
        throw ParseError(path, lineno, "unknown language code `" + value + "`");
      }
      inv.lang = value;
      saw_lang = true;
    } else if (key == "script") {
      if (value == "abjad") {
        inv.kind = ScriptInventory::Kind::kAbjad;
      } else if (value == "alphabet") {
        inv.kind = ScriptInventory::Kind::kAlphabet;
      } else {
        throw ParseError(path, lineno, "script must be abjad or alphabet");
      }
    } else if (key == "zwnj") {
      if (value == "true") {
        inv.uses_zwnj = true;
      } else if (value == "false") {
        inv.uses_zwnj = false;
      } else {
        throw ParseError(path, lineno, "zwnj must be true or false");
      }
    } else if (key == "char" || key == "diacritic") {
      const Grapheme g = parse_grapheme_token(value, path, lineno);
      if (!inv.chars.insert(g).second) {
        throw ParseError(path, lineno,
                         "duplicate grapheme " + codepoint_label(g));
      }
      if (key == "diacritic") inv.diacritics.insert(g);
    } else {
      throw ParseError(path, lineno, "unknown key `" + key + "`");
    }
  }
  if (!saw_lang) throw ParseError(path, 1, "missing `lang` declaration");
  if (inv.chars.empty()) throw ParseError(path, 1, "inventory has no graphemes");
  return inv;
}

namespace {

std::string position_name(RulePosition p) {
  switch (p) {
    case RulePosition::kAnywhere:
      return "anywhere";
    case RulePosition::kWordInitial:
      return "word_initial";
    case RulePosition::kWordFinal:
      return "word_final";
  }
  return "?";
}

}  // namespace

MappingRuleSet compile_rules(const std::string& path,
                             const ScriptInventory& src,
                             const ScriptInventory& dom) {
  MappingRuleSet set;
  set.src_lang = src.lang;
  set.dom_lang = dom.lang;
  std::set<std::pair<std::u32string, RulePosition>> seen;

  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const size_t lineno = idx + 1;
    const std::string line = strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto fields = split_tsv(line);
    if (fields.size() != 3) {
      throw ParseError(path, lineno,
                       "expected `source<TAB>position<TAB>targets`");
    }

    MappingRule rule;
    rule.source = parse_grapheme_sequence(fields[0], path, lineno);
    if (rule.source.size() > 2) {
      throw ParseError(path, lineno, "source longer than 2 graphemes");
    }
    for (const auto& g : rule.source) {
      if (!src.contains(g)) {
        throw ParseError(path, lineno,
                         "source grapheme " + codepoint_label(g) +
                             " not in " + src.lang + " inventory");
      }
    }

    if (fields[1] == "anywhere") {
      rule.position = RulePosition::kAnywhere;
    } else if (fields[1] == "word_initial") {
      rule.position = RulePosition::kWordInitial;
    } else if (fields[1] == "word_final") {
      rule.position = RulePosition::kWordFinal;
    } else {
      throw ParseError(path, lineno, "bad position `" + fields[1] + "`");
    }

    // Targets are |-separated; each is a grapheme sequence or ∅.
    const std::string& tf = fields[2];
    size_t pos = 0;
    std::set<std::u32string> target_keys;
    while (pos <= tf.size()) {
      size_t end = tf.find('|', pos);
      if (end == std::string::npos) end = tf.size();
      const std::string piece = trim(tf.substr(pos, end - pos));
      if (piece.empty()) throw ParseError(path, lineno, "empty target field");
      std::vector<Grapheme> target;
      if (piece != "∅") {  // ∅
        target = parse_grapheme_sequence(piece, path, lineno);
        if (target.size() > 2) {
          throw ParseError(path, lineno, "target longer than 2 graphemes");
        }
        for (const auto& g : target) {
          if (!dom.contains(g)) {
            throw ParseError(path, lineno,
                             "target grapheme " + codepoint_label(g) +
                                 " not in " + dom.lang + " inventory");
          }
        }
      }
      std::u32string key;
      for (const auto& g : target) key += g;
      if (!target_keys.insert(key).second) {
        throw ParseError(path, lineno, "duplicate target in rule");
      }
      rule.targets.push_back(std::move(target));
      if (end == tf.size()) break;
      pos = end + 1;
    }
    if (rule.targets.empty()) throw ParseError(path, lineno, "rule has no targets");

    std::u32string source_key;
    for (const auto& g : rule.source) source_key += g;
    if (!seen.insert({source_key, rule.position}).second) {
      throw ParseError(path, lineno,
                       "duplicate rule for source " + fields[0] + " at " +
                           position_name(rule.position));
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

double script_ratio(const MappingRuleSet& rules, const ScriptInventory& a,
                    const ScriptInventory& b) {
  std::set<Grapheme> inter;
  for (const auto& g : a.chars) {
    if (b.contains(g)) inter.insert(g);
  }
  if (inter.empty()) return 0.0;

  const size_t uni = a.chars.size() + b.chars.size() - inter.size();

  // Count rules per single-grapheme source, and remember the unique rule.
  std::map<Grapheme, std::pair<size_t, const MappingRule*>> by_source;
  for (const auto& rule : rules.rules) {
    if (rule.source.size() != 1) continue;
    auto& slot = by_source[rule.source[0]];
    slot.first++;
    slot.second = &rule;
  }

  size_t m = 0;
  for (const auto& g : inter) {
    const auto it = by_source.find(g);
    if (it == by_source.end() || it->second.first != 1) continue;
    const MappingRule& rule = *it->second.second;
    if (rule.targets.size() == 1 && rule.targets[0].size() == 1 &&
        rule.targets[0][0] == g) {
      ++m;
    }
  }

  const double md = static_cast<double>(m);
  return (md / static_cast<double>(uni)) * (md / static_cast<double>(inter.size()));
}

}  // namespace scriptnorm
