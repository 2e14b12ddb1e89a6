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

#include "scriptnorm/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scriptnorm/alignment.hpp"
#include "scriptnorm/corpus.hpp"
#include "scriptnorm/digest.hpp"
#include "scriptnorm/error.hpp"
#include "scriptnorm/inventory.hpp"
#include "scriptnorm/langid.hpp"
#include "scriptnorm/metrics.hpp"
#include "scriptnorm/noise.hpp"
#include "scriptnorm/normalizer.hpp"
#include "scriptnorm/rng.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

namespace {

struct GlobalOptions {
  std::string data_dir = "data";
  unsigned threads = 1;
  CLI::Option* config_opt = nullptr;

  std::string config_path() const {
    return (config_opt != nullptr && config_opt->count() > 0)
               ? config_opt->as<std::string>()
               : "";
  }
};

std::string inventory_path(const GlobalOptions& g, const std::string& lang) {
  return g.data_dir + "/inventories/" + lang + ".tsv";
}

std::string default_rules_path(const GlobalOptions& g, const std::string& src,
                               const std::string& dom) {
  return g.data_dir + "/rules/" + src + "_" + dom + ".tsv";
}

ScriptInventory load_lang(const GlobalOptions& g, const std::string& lang) {
  if (!is_known_language(lang)) {
    throw Error("unknown language code: " + lang);
  }
  return load_inventory(inventory_path(g, lang));
}

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

// Every artifact-producing command records what went in and what came out.
Manifest new_manifest(const std::string& command, const GlobalOptions& g) {
  Manifest manifest;
  manifest.add("command", command);
  const std::string config = g.config_path();
  if (config.empty()) {
    manifest.add("config.sha256", "-");
  } else {
    manifest.add_file("config", config);
  }
  return manifest;
}

void append_report_csv(const std::string& path, const std::string& label,
                       const EvalReport& report) {
  ensure_parent(path);
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open file for writing: " + path);
  if (fresh) out << kReportCsvHeader << '\n';
  out << report_csv_row(label, report) << '\n';
}

// ---------------------------------------------------------------- clean --

struct CleanOpts {
  std::string lang, input, output;
  size_t min_tokens = 5, max_tokens = 20;
  bool strip_zwnj = false;
};

void run_clean(const CleanOpts& o, const GlobalOptions& g) {
  const ScriptInventory inv = load_lang(g, o.lang);
  const std::string raw = read_file(o.input);
  CleanConfig cfg;
  cfg.strip_zwnj = o.strip_zwnj;
  CleanLog log;
  const std::string cleaned = clean_text(raw, cfg, inv, &log);
  const auto sentences =
      extract_sentences(cleaned, o.min_tokens, o.max_tokens);
  ensure_parent(o.output);
  write_lines(o.output, sentences);

  std::vector<std::string> removals;
  removals.push_back("urls\t" + std::to_string(log.urls));
  removals.push_back("emails\t" + std::to_string(log.emails));
  removals.push_back("dates\t" + std::to_string(log.dates));
  removals.push_back("zwnj\t" + std::to_string(log.zwnj));
  for (const auto& [cp, count] : log.stripped) {
    removals.push_back(codepoint_label(cp) + "\t" + std::to_string(count));
  }
  const std::string removals_path = o.output + ".removals.tsv";
  write_lines(removals_path, removals);

  Manifest manifest = new_manifest("clean", g);
  manifest.add("lang", o.lang);
  manifest.add("min_tokens", static_cast<uint64_t>(o.min_tokens));
  manifest.add("max_tokens", static_cast<uint64_t>(o.max_tokens));
  manifest.add("strip_zwnj", o.strip_zwnj ? "true" : "false");
  manifest.add_file("input", o.input);
  manifest.add_file("output", o.output);
  manifest.add_file("removals", removals_path);
  manifest.add("sentences", static_cast<uint64_t>(sentences.size()));
  manifest.add("stripped_code_points", log.total_stripped());
  manifest.save(o.output + ".manifest.tsv");

  std::cout << "clean: " << sentences.size() << " sentences -> " << o.output
            << " (" << log.total_stripped() << " code points stripped)\n";
}

// ---------------------------------------------------------------- vocab --

struct VocabOpts {
  std::string input, output;
  int min_freq = 3;
};

void run_vocab(const VocabOpts& o, const GlobalOptions& g) {
  const Vocabulary vocab = build_vocabulary(read_file(o.input), o.min_freq);
  ensure_parent(o.output);
  save_vocabulary(vocab, o.output);

  Manifest manifest = new_manifest("vocab", g);
  manifest.add("min_freq", static_cast<uint64_t>(o.min_freq));
  manifest.add_file("input", o.input);
  manifest.add_file("output", o.output);
  manifest.add("words", static_cast<uint64_t>(vocab.entries.size()));
  manifest.save(o.output + ".manifest.tsv");

  std::cout << "vocab: " << vocab.entries.size() << " words -> " << o.output
            << "\n";
}

// ---------------------------------------------------------------- pairs --

struct PairsOpts {
  std::string src, dom, vocab, lexicon, rules, output;
};

void run_pairs(const PairsOpts& o, const GlobalOptions& g) {
  const ScriptInventory src_inv = load_lang(g, o.src);
  const ScriptInventory dom_inv = load_lang(g, o.dom);
  const std::string rules_path =
      o.rules.empty() ? default_rules_path(g, o.src, o.dom) : o.rules;
  const MappingRuleSet rules = compile_rules(rules_path, src_inv, dom_inv);
  const Vocabulary vocab = load_vocabulary(o.vocab);
  const std::set<std::string> lexicon = load_lexicon(o.lexicon);

  PairExtractionStats stats;
  const auto pairs =
      extract_spelling_pairs(vocab, lexicon, rules, src_inv, &stats);
  ensure_parent(o.output);
  save_pairs(pairs, o.output);

  Manifest manifest = new_manifest("pairs", g);
  manifest.add("src", o.src);
  manifest.add("dom", o.dom);
  manifest.add_file("rules", rules_path);
  manifest.add_file("vocab", o.vocab);
  manifest.add_file("lexicon", o.lexicon);
  manifest.add_file("output", o.output);
  manifest.add("words_scanned", stats.words_scanned);
  manifest.add("words_capped", stats.words_capped);
  manifest.add("variants_generated", stats.variants_generated);
  manifest.add("pairs", stats.pairs_emitted);
  manifest.save(o.output + ".manifest.tsv");

  std::cout << "pairs: " << pairs.size() << " spelling pairs from "
            << stats.words_scanned << " words (" << stats.words_capped
            << " hit the variant cap)\n";
}

// ---------------------------------------------------------------- align --

struct AlignOpts {
  std::string src, dom, pairs, rules, output;
};

void run_align(const AlignOpts& o, const GlobalOptions& g) {
  const ScriptInventory src_inv = load_lang(g, o.src);
  const ScriptInventory dom_inv = load_lang(g, o.dom);
  const std::string rules_path =
      o.rules.empty() ? default_rules_path(g, o.src, o.dom) : o.rules;
  const MappingRuleSet rules = compile_rules(rules_path, src_inv, dom_inv);
  std::vector<SpellingPair> pairs;
  if (!o.pairs.empty()) pairs = load_pairs(o.pairs);

  const CharAlignmentMatrix matrix = build_alignment_matrix(
      pairs, rules, src_inv, dom_inv, static_cast<int>(g.threads));
  ensure_parent(o.output);
  save_matrix(matrix, o.output);

  Manifest manifest = new_manifest("align", g);
  manifest.add("src", o.src);
  manifest.add("dom", o.dom);
  manifest.add_file("rules", rules_path);
  if (!o.pairs.empty()) manifest.add_file("pairs", o.pairs);
  manifest.add_file("output", o.output);
  manifest.add_file("identities", o.output + ".identity.tsv");
  manifest.add("source_rows", static_cast<uint64_t>(matrix.entries.size()));
  manifest.add("identity_rows",
               static_cast<uint64_t>(matrix.identities.size()));
  manifest.save(o.output + ".manifest.tsv");

  std::cout << "align: " << matrix.entries.size() << " source rows, "
            << matrix.identities.size() << " identity diagnostics -> "
            << o.output << "\n";
}

// ---------------------------------------------------------------- noise --

struct NoiseOpts {
  std::string matrix, corpus, output_dir;
  std::string level = "each";
  uint64_t seed = 0;
  bool no_dedup = false;
};

ParallelDataset make_single_level(const std::vector<std::string>& sentences,
                                  const CharAlignmentMatrix& matrix,
                                  uint64_t seed, int level) {
  ParallelDataset dataset;
  dataset.src_lang = matrix.src_lang;
  dataset.dom_lang = matrix.dom_lang;
  dataset.level = level;
  dataset.seed = seed;
  dataset.pairs.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(level), i));
    dataset.pairs.push_back({inject_noise(sentences[i], matrix, level, rng),
                             sentences[i], level, i});
  }
  return dataset;
}

void run_noise(const NoiseOpts& o, const GlobalOptions& g) {
  const CharAlignmentMatrix matrix = load_matrix(o.matrix);
  const std::vector<std::string> sentences = read_lines(o.corpus);
  std::filesystem::create_directories(o.output_dir);

  Manifest manifest = new_manifest("noise", g);
  manifest.add("seed", o.seed);
  manifest.add("level", o.level);
  manifest.add("dedup", o.no_dedup ? "false" : "true");
  manifest.add_file("matrix", o.matrix);
  manifest.add_file("corpus", o.corpus);
  manifest.add("sentences", static_cast<uint64_t>(sentences.size()));

  const auto emit = [&](const ParallelDataset& dataset) {
    const std::string name =
        dataset_filename(matrix.src_lang, matrix.dom_lang, dataset.level);
    const std::string path = o.output_dir + "/" + name;
    save_dataset(dataset, path);
    manifest.add_file("output." + name, path);
    manifest.add("pairs." + name, static_cast<uint64_t>(dataset.pairs.size()));
    std::cout << "noise: " << path << " (" << dataset.pairs.size()
              << " pairs)\n";
  };

  if (o.level == "each" || o.level == "all") {
    const auto datasets = generate_parallel_datasets(
        sentences, matrix, o.seed, !o.no_dedup, static_cast<int>(g.threads));
    for (const auto& dataset : datasets) {
      if (o.level == "all" && dataset.level != kAllLevels) continue;
      emit(dataset);
    }
  } else {
    int level = 0;
    try {
      size_t used = 0;
      level = std::stoi(o.level, &used);
      if (used != o.level.size()) throw std::invalid_argument(o.level);
    } catch (const std::exception&) {
      throw CLI::ValidationError(
          "--level takes each, all, or an integer 0..100");
    }
    if (level < 0 || level > 100) {
      throw CLI::ValidationError("--level takes each, all, or 0..100");
    }
    emit(make_single_level(sentences, matrix, o.seed, level));
  }
  manifest.save(o.output_dir + "/" + matrix.src_lang + "_" +
                matrix.dom_lang + ".noise.manifest.tsv");
}

// ----------------------------------------------------------------- eval --

struct EvalOpts {
  bool baseline = false;
  std::string dataset, hyp, ref, label, csv;
};

void run_eval(const EvalOpts& o) {
  EvalReport report;
  std::string default_label;
  if (o.baseline) {
    if (o.dataset.empty() || !o.hyp.empty() || !o.ref.empty()) {
      throw CLI::ValidationError("--baseline takes --dataset alone");
    }
    report = evaluate(o.dataset, "", /*baseline_mode=*/true);
    default_label = std::filesystem::path(o.dataset).filename().string();
  } else {
    if (o.hyp.empty() || o.ref.empty() || !o.dataset.empty()) {
      throw CLI::ValidationError(
          "pass --baseline --dataset, or --hyp with --ref");
    }
    report = evaluate(o.hyp, o.ref, /*baseline_mode=*/false);
    default_label = std::filesystem::path(o.hyp).filename().string();
  }
  std::cout << report_tsv_line(report) << "\n";
  if (!o.csv.empty()) {
    append_report_csv(o.csv, o.label.empty() ? default_label : o.label,
                      report);
  }
}

// ---------------------------------------------------------- langid-train --

struct LangidTrainOpts {
  std::string corpus_dir, model, test_out;
  std::string setup = "merged";
  uint64_t seed = 0;
  size_t cap = 6000;
  double split = 0.8;
  double learning_rate = 0.1;
  int epochs = 25;
};

void run_langid_train(const LangidTrainOpts& o, const GlobalOptions& g) {
  Setup setup = Setup::kMerged;
  if (o.setup == "clean") {
    setup = Setup::kClean;
  } else if (o.setup == "noisy") {
    setup = Setup::kNoisy;
  } else if (o.setup != "merged") {
    throw CLI::ValidationError("--setup takes clean, noisy, or merged");
  }

  Manifest manifest = new_manifest("langid-train", g);
  std::map<std::string, LabelData> data;
  for (const auto& code : kLanguageCodes) {
    const std::string label(code);
    const std::string clean_path = o.corpus_dir + "/" + label + ".clean.txt";
    if (!std::filesystem::exists(clean_path)) continue;
    LabelData pools;
    for (const auto& line : read_lines(clean_path)) {
      if (!trim(line).empty()) pools.clean.push_back(line);
    }
    manifest.add_file("corpus." + label + ".clean", clean_path);
    const std::string noisy_path = o.corpus_dir + "/" + label + ".noisy.txt";
    if (std::filesystem::exists(noisy_path)) {
      // Accepts plain sentences or `noisy<TAB>clean` dataset rows; only the
      // noisy side trains the identifier.
      for (const auto& line : read_lines(noisy_path)) {
        if (trim(line).empty()) continue;
        pools.noisy.push_back(split_tsv(line)[0]);
      }
      manifest.add_file("corpus." + label + ".noisy", noisy_path);
    }
    data[label] = std::move(pools);
  }
  if (data.size() < 2) {
    throw Error("langid-train: found " + std::to_string(data.size()) +
                " label corpora under " + o.corpus_dir +
                " (need at least 2 `<code>.clean.txt` files)");
  }

  TrainOptions options;
  options.setup = setup;
  options.cap = o.cap;
  options.split = o.split;
  options.seed = o.seed;
  options.learning_rate = o.learning_rate;
  options.epochs = o.epochs;
  const TrainResult result = train_langid(data, options);
  for (const auto& line : result.log) std::cout << "langid-train: " << line << "\n";

  ensure_parent(o.model);
  save_model(result.model, o.model);
  const std::string test_path =
      o.test_out.empty() ? o.model + ".test.tsv" : o.test_out;
  ensure_parent(test_path);
  save_test_items(result.test, test_path);

  manifest.add("setup", o.setup);
  manifest.add("seed", o.seed);
  manifest.add("cap", static_cast<uint64_t>(o.cap));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", o.split);
  manifest.add("split", buf);
  std::snprintf(buf, sizeof(buf), "%g", o.learning_rate);
  manifest.add("learning_rate", buf);
  manifest.add("epochs", static_cast<uint64_t>(o.epochs));
  manifest.add("labels", static_cast<uint64_t>(result.model.labels.size()));
  manifest.add_file("model", o.model);
  manifest.add_file("test", test_path);
  manifest.add("test_items", static_cast<uint64_t>(result.test.size()));
  manifest.save(o.model + ".manifest.tsv");

  std::cout << "langid-train: " << result.model.labels.size()
            << " labels -> " << o.model << " (" << result.test.size()
            << " held-out items in " << test_path << ")\n";
}

// ----------------------------------------------------------- langid-eval --

struct LangidEvalOpts {
  std::string model, test, csv_out, confusion_out;
};

void run_langid_eval(const LangidEvalOpts& o) {
  const LangIdModel model = load_model(o.model);
  const std::vector<TestItem> items = load_test_items(o.test);
  const LangIdEval eval = eval_langid(model, items);

  char line[160];
  std::snprintf(line, sizeof(line),
                "macro\tp@1 %.4f\tr@1 %.4f\tf@1 %.4f\tp@2 %.4f\tr@2 %.4f"
                "\tf@2 %.4f\tn %llu",
                eval.macro.p1, eval.macro.r1, eval.macro.f1, eval.macro.p2,
                eval.macro.r2, eval.macro.f2,
                static_cast<unsigned long long>(eval.macro.n));
  std::cout << line << "\n";

  if (!o.csv_out.empty()) {
    ensure_parent(o.csv_out);
    write_file(o.csv_out, eval_csv(eval));
  }
  if (!o.confusion_out.empty()) {
    ensure_parent(o.confusion_out);
    write_file(o.confusion_out, confusion_csv(eval));
  }
}

// ------------------------------------------------------------- normalize --

struct NormalizeOpts {
  std::string matrix, channel, train, lm, input, output;
  std::string save_channel_path, save_lm_path;
  size_t beam = 8;
  double self_weight = 1.0;
  int order = 5;
  double alpha = 0.1;
};

void run_normalize(const NormalizeOpts& o, const GlobalOptions& g) {
  ChannelModel channel;
  if (!o.channel.empty()) {
    if (!o.matrix.empty()) {
      throw CLI::ValidationError("--matrix and --channel are exclusive");
    }
    channel = load_channel(o.channel);
  } else if (!o.matrix.empty()) {
    channel = fit_channel(load_matrix(o.matrix), o.self_weight);
    channel.matrix_sha256 = sha256_file_hex(o.matrix);
  } else {
    throw CLI::ValidationError("pass --matrix or --channel");
  }

  CharLM lm;
  if (!o.lm.empty()) {
    if (!o.train.empty()) {
      throw CLI::ValidationError("--train and --lm are exclusive");
    }
    lm = load_lm(o.lm);
  } else if (!o.train.empty()) {
    // Make sure every channel candidate is inside the smoothing alphabet,
    // even when the clean corpus happens to never use it.
    std::set<char32_t> extra;
    for (const auto& [key, row] : channel.inverse) {
      (void)key;
      for (const auto& entry : row) {
        for (const char32_t cp : entry.clean) extra.insert(cp);
      }
    }
    lm = train_char_lm(read_lines(o.train), o.order, o.alpha, extra);
  } else {
    throw CLI::ValidationError("pass --train or --lm");
  }

  const std::vector<std::string> lines = read_lines(o.input);
  const std::vector<std::string> outputs =
      normalize_lines(lines, channel, lm, o.beam, g.threads);
  ensure_parent(o.output);
  write_lines(o.output, outputs);
  if (!o.save_channel_path.empty()) {
    ensure_parent(o.save_channel_path);
    save_channel(channel, o.save_channel_path);
  }
  if (!o.save_lm_path.empty()) {
    ensure_parent(o.save_lm_path);
    save_lm(lm, o.save_lm_path);
  }

  Manifest manifest = new_manifest("normalize", g);
  if (!o.matrix.empty()) manifest.add_file("matrix", o.matrix);
  if (!o.channel.empty()) manifest.add_file("channel", o.channel);
  if (!o.train.empty()) manifest.add_file("train", o.train);
  if (!o.lm.empty()) manifest.add_file("lm", o.lm);
  manifest.add("beam", static_cast<uint64_t>(o.beam));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", o.self_weight);
  manifest.add("self_weight", buf);
  manifest.add("order", static_cast<uint64_t>(o.order));
  std::snprintf(buf, sizeof(buf), "%g", o.alpha);
  manifest.add("alpha", buf);
  manifest.add_file("input", o.input);
  manifest.add_file("output", o.output);
  if (!o.save_channel_path.empty()) {
    manifest.add_file("saved_channel", o.save_channel_path);
  }
  if (!o.save_lm_path.empty()) {
    manifest.add_file("saved_lm", o.save_lm_path);
  }
  manifest.add("sentences", static_cast<uint64_t>(outputs.size()));
  manifest.save(o.output + ".manifest.tsv");

  std::cout << "normalize: " << outputs.size() << " sentences -> "
            << o.output << "\n";
}

// ----------------------------------------------------------------- score --

struct ScoreOpts {
  std::string hyp, ref, label, csv;
};

void run_score(const ScoreOpts& o) {
  const EvalReport report = score_hypotheses(o.hyp, o.ref);
  std::cout << report_tsv_line(report) << "\n";
  if (!o.csv.empty()) {
    const std::string label =
        o.label.empty() ? std::filesystem::path(o.hyp).filename().string()
                        : o.label;
    append_report_csv(o.csv, label, report);
  }
}

// ----------------------------------------------------------------- ratio --

struct RatioOpts {
  std::string src, dom, rules;
};

void run_ratio(const RatioOpts& o, const GlobalOptions& g) {
  const ScriptInventory src_inv = load_lang(g, o.src);
  const ScriptInventory dom_inv = load_lang(g, o.dom);
  const std::string rules_path =
      o.rules.empty() ? default_rules_path(g, o.src, o.dom) : o.rules;
  const MappingRuleSet rules = compile_rules(rules_path, src_inv, dom_inv);
  char line[64];
  std::snprintf(line, sizeof(line), "%s\t%s\t%.4f", o.src.c_str(),
                o.dom.c_str(), script_ratio(rules, src_inv, dom_inv));
  std::cout << line << "\n";
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{
      "Script-normalization toolkit for Perso-Arabic minority languages"};
  app.name("scriptnorm");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", "scriptnorm 1.0.0");
  app.option_defaults()->always_capture_default();

  GlobalOptions g;
  app.add_option("--data-dir", g.data_dir,
                 "Directory holding inventories/ and rules/");
  app.add_option("--threads", g.threads, "Worker-thread cap")
      ->check(CLI::Range(1u, 256u));
  g.config_opt =
      app.set_config("--config", "",
                     "Key-value config file; flags override its values");
  // Inherited by every subcommand created below: global options stay valid
  // after the subcommand name.
  app.fallthrough();

  {
    auto o = std::make_shared<CleanOpts>();
    CLI::App* cmd = app.add_subcommand(
        "clean", "Clean raw text and extract length-bounded sentences");
    cmd->add_option("--lang", o->lang, "Language code of the text")
        ->required();
    cmd->add_option("--input", o->input, "Raw UTF-8 text file")->required();
    cmd->add_option("--output", o->output, "Sentence-per-line output file")
        ->required();
    cmd->add_option("--min-tokens", o->min_tokens,
                    "Shortest sentence to keep");
    cmd->add_option("--max-tokens", o->max_tokens, "Longest sentence to keep");
    cmd->add_flag("--strip-zwnj", o->strip_zwnj,
                  "Drop ZWNJ (rejected for orthographies that use it)");
    cmd->callback([o, &g] { run_clean(*o, g); });
  }
  {
    auto o = std::make_shared<VocabOpts>();
    CLI::App* cmd = app.add_subcommand(
        "vocab", "Build a frequency-filtered vocabulary from clean text");
    cmd->add_option("--input", o->input, "Clean sentence file")->required();
    cmd->add_option("--output", o->output, "Vocabulary TSV")->required();
    cmd->add_option("--min-freq", o->min_freq, "Minimum frequency (3..10)");
    cmd->callback([o, &g] { run_vocab(*o, g); });
  }
  {
    auto o = std::make_shared<PairsOpts>();
    CLI::App* cmd = app.add_subcommand(
        "pairs", "Extract cross-script spelling pairs from a vocabulary");
    cmd->add_option("--src", o->src, "Source language code")->required();
    cmd->add_option("--dom", o->dom, "Dominant language code")->required();
    cmd->add_option("--vocab", o->vocab, "Source vocabulary TSV")->required();
    cmd->add_option("--lexicon", o->lexicon,
                    "Dominant-language word list (first TSV field)")
        ->required();
    cmd->add_option("--rules", o->rules,
                    "Mapping rules (default: data dir, `<src>_<dom>.tsv`)");
    cmd->add_option("--output", o->output, "Spelling-pair TSV")->required();
    cmd->callback([o, &g] { run_pairs(*o, g); });
  }
  {
    auto o = std::make_shared<AlignOpts>();
    CLI::App* cmd = app.add_subcommand(
        "align", "Build the character-alignment matrix from pairs and rules");
    cmd->add_option("--src", o->src, "Source language code")->required();
    cmd->add_option("--dom", o->dom, "Dominant language code")->required();
    cmd->add_option("--pairs", o->pairs,
                    "Spelling pairs (omit for a rule-only matrix)");
    cmd->add_option("--rules", o->rules,
                    "Mapping rules (default: data dir, `<src>_<dom>.tsv`)");
    cmd->add_option("--output", o->output, "Matrix TSV")->required();
    cmd->callback([o, &g] { run_align(*o, g); });
  }
  {
    auto o = std::make_shared<NoiseOpts>();
    CLI::App* cmd = app.add_subcommand(
        "noise", "Synthesize graded noisy/clean parallel datasets");
    cmd->add_option("--matrix", o->matrix, "Alignment matrix TSV")
        ->required();
    cmd->add_option("--corpus", o->corpus, "Clean sentence file")->required();
    cmd->add_option("--output-dir", o->output_dir, "Dataset directory")
        ->required();
    cmd->add_option("--seed", o->seed, "Random seed (required)")->required();
    cmd->add_option("--level", o->level,
                    "each, all, or a single level 0..100");
    cmd->add_flag("--no-dedup", o->no_dedup,
                  "Keep duplicate (noisy, clean) rows in the union dataset");
    cmd->callback([o, &g] { run_noise(*o, g); });
  }
  {
    auto o = std::make_shared<EvalOpts>();
    CLI::App* cmd = app.add_subcommand(
        "eval", "Report BLEU / chrF / sequence accuracy");
    cmd->add_flag("--baseline", o->baseline,
                  "Score a dataset's noisy column against its clean column");
    cmd->add_option("--dataset", o->dataset, "noisy<TAB>clean dataset");
    cmd->add_option("--hyp", o->hyp, "Hypothesis file, one sentence per line");
    cmd->add_option("--ref", o->ref, "Reference file, one sentence per line");
    cmd->add_option("--label", o->label, "Row label for --csv");
    cmd->add_option("--csv", o->csv, "Append a plot-ready CSV row here");
    cmd->callback([o] { run_eval(*o); });
  }
  {
    auto o = std::make_shared<LangidTrainOpts>();
    CLI::App* cmd = app.add_subcommand(
        "langid-train",
        "Train the language identifier on per-label corpora");
    cmd->add_option("--corpus-dir", o->corpus_dir,
                    "Directory of `<code>.clean.txt` / `<code>.noisy.txt`")
        ->required();
    cmd->add_option("--model", o->model, "Output model file")->required();
    cmd->add_option("--seed", o->seed, "Random seed (required)")->required();
    cmd->add_option("--setup", o->setup, "clean, noisy, or merged");
    cmd->add_option("--cap", o->cap, "Per-label sentence cap");
    cmd->add_option("--split", o->split, "Training fraction (0..1)");
    cmd->add_option("--lr", o->learning_rate, "Initial learning rate");
    cmd->add_option("--epochs", o->epochs, "Training epochs")
        ->check(CLI::Range(1, 1000));
    cmd->add_option("--test-out", o->test_out,
                    "Held-out test TSV (default `<model>.test.tsv`)");
    cmd->callback([o, &g] { run_langid_train(*o, g); });
  }
  {
    auto o = std::make_shared<LangidEvalOpts>();
    CLI::App* cmd = app.add_subcommand(
        "langid-eval", "Evaluate a language identifier on held-out items");
    cmd->add_option("--model", o->model, "Model file")->required();
    cmd->add_option("--test", o->test, "Test TSV from langid-train")
        ->required();
    cmd->add_option("--eval-csv", o->csv_out, "Per-label scores CSV");
    cmd->add_option("--confusion-csv", o->confusion_out,
                    "Confusion matrix CSV");
    cmd->callback([o] { run_langid_eval(*o); });
  }
  {
    auto o = std::make_shared<NormalizeOpts>();
    CLI::App* cmd = app.add_subcommand(
        "normalize", "Decode noisy text with the noisy-channel beam search");
    cmd->add_option("--matrix", o->matrix,
                    "Alignment matrix to invert into a channel");
    cmd->add_option("--channel", o->channel, "Previously saved channel TSV");
    cmd->add_option("--train", o->train,
                    "Clean sentences for the character language model");
    cmd->add_option("--lm", o->lm, "Previously saved language-model TSV");
    cmd->add_option("--input", o->input, "Noisy sentences")->required();
    cmd->add_option("--output", o->output, "Normalized output")->required();
    cmd->add_option("--beam", o->beam, "Beam width")
        ->check(CLI::Range(static_cast<size_t>(1), static_cast<size_t>(1024)));
    cmd->add_option("--self-weight", o->self_weight,
                    "Channel weight of keeping a grapheme");
    cmd->add_option("--order", o->order, "Language-model n-gram order")
        ->check(CLI::Range(2, 8));
    cmd->add_option("--alpha", o->alpha, "Language-model smoothing");
    cmd->add_option("--save-channel", o->save_channel_path,
                    "Write the fitted channel here");
    cmd->add_option("--save-lm", o->save_lm_path,
                    "Write the fitted language model here");
    cmd->callback([o, &g] { run_normalize(*o, g); });
  }
  {
    auto o = std::make_shared<ScoreOpts>();
    CLI::App* cmd = app.add_subcommand(
        "score", "Score externally produced hypotheses against references");
    cmd->add_option("--hyp", o->hyp, "Hypothesis file")->required();
    cmd->add_option("--ref", o->ref, "Reference file")->required();
    cmd->add_option("--label", o->label, "Row label for --csv");
    cmd->add_option("--csv", o->csv, "Append a plot-ready CSV row here");
    cmd->callback([o] { run_score(*o); });
  }
  {
    auto o = std::make_shared<RatioOpts>();
    CLI::App* cmd = app.add_subcommand(
        "ratio", "Print the script ratio for a language pair");
    cmd->add_option("--src", o->src, "Source language code")->required();
    cmd->add_option("--dom", o->dom, "Dominant language code")->required();
    cmd->add_option("--rules", o->rules,
                    "Mapping rules (default: data dir, `<src>_<dom>.tsv`)");
    cmd->callback([o, &g] { run_ratio(*o, g); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "scriptnorm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "scriptnorm: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace scriptnorm
