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

#include "scriptnorm/langid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "scriptnorm/error.hpp"
#include "scriptnorm/rng.hpp"
#include "scriptnorm/textio.hpp"
#include "scriptnorm/unicode.hpp"

namespace scriptnorm {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'L', 'I'};
constexpr uint32_t kModelVersion = 1;
constexpr int kMinNgram = 2;
constexpr int kMaxNgram = 4;

// Independent seed streams per training stage.
constexpr uint64_t kSampleStream = 1;
constexpr uint64_t kSplitStream = 2;
constexpr uint64_t kInitStream = 3;
constexpr uint64_t kShuffleStream = 4;

uint64_t fnv1a(const std::string& bytes) {
  uint64_t hash = 1469598103934665603ull;
  for (const unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace

size_t LangIdModel::label_index(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::string::npos;
}

std::vector<uint32_t> hash_features(const std::string& sentence,
                                    uint32_t buckets) {
  std::vector<uint32_t> features;
  const std::u32string cps = decode_utf8(sentence);
  size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space_cp(cps[i])) ++i;
    if (i >= cps.size()) break;
    size_t end = i;
    while (end < cps.size() && !is_space_cp(cps[end])) ++end;

    std::u32string word = U"<";
    word.append(cps, i, end - i);
    word += U'>';
    for (int n = kMinNgram; n <= kMaxNgram; ++n) {
      if (word.size() < static_cast<size_t>(n)) break;
      for (size_t p = 0; p + n <= word.size(); ++p) {
        features.push_back(static_cast<uint32_t>(
            fnv1a(encode_utf8(word.substr(p, n))) % buckets));
      }
    }
    features.push_back(
        static_cast<uint32_t>(fnv1a(encode_utf8(word)) % buckets));
    i = end;
  }
  return features;
}

namespace {

struct Example {
  size_t label = 0;
  std::vector<uint32_t> features;
};

// One SGD step of the averaged-embedding softmax classifier. The hidden
// gradient uses the pre-update output weights, as in the reference shallow
// classifier.
double sgd_step(LangIdModel* model, const Example& example, double lr,
                std::vector<double>* hidden, std::vector<double>* probs) {
  const size_t dim = model->dim;
  const size_t n_labels = model->labels.size();
  const size_t n_feats = example.features.size();
  if (n_feats == 0) return 0.0;

  std::fill(hidden->begin(), hidden->end(), 0.0);
  for (const uint32_t f : example.features) {
    const float* row = &model->embeddings[static_cast<size_t>(f) * dim];
    for (size_t d = 0; d < dim; ++d) (*hidden)[d] += row[d];
  }
  for (size_t d = 0; d < dim; ++d) (*hidden)[d] /= n_feats;

  double max_logit = -1e30;
  for (size_t l = 0; l < n_labels; ++l) {
    const float* w = &model->out_weights[l * dim];
    double logit = 0.0;
    for (size_t d = 0; d < dim; ++d) logit += w[d] * (*hidden)[d];
    (*probs)[l] = logit;
    max_logit = std::max(max_logit, logit);
  }
  double z = 0.0;
  for (size_t l = 0; l < n_labels; ++l) {
    (*probs)[l] = std::exp((*probs)[l] - max_logit);
    z += (*probs)[l];
  }
  for (size_t l = 0; l < n_labels; ++l) (*probs)[l] /= z;
  const double loss = -std::log(std::max((*probs)[example.label], 1e-300));

  std::vector<double> grad_hidden(dim, 0.0);
  for (size_t l = 0; l < n_labels; ++l) {
    const double grad_out = (*probs)[l] - (l == example.label ? 1.0 : 0.0);
    float* w = &model->out_weights[l * dim];
    for (size_t d = 0; d < dim; ++d) {
      grad_hidden[d] += grad_out * w[d];
      w[d] -= static_cast<float>(lr * grad_out * (*hidden)[d]);
    }
  }
  const double scale = lr / n_feats;
  for (const uint32_t f : example.features) {
    float* row = &model->embeddings[static_cast<size_t>(f) * dim];
    for (size_t d = 0; d < dim; ++d) {
      row[d] -= static_cast<float>(scale * grad_hidden[d]);
    }
  }
  return loss;
}

// Uniform down-sample of k indices out of n, returned in corpus order.
std::vector<size_t> sample_indices(size_t n, size_t k, Rng* rng) {
  if (k >= n) {
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::vector<size_t> chosen = rng->sample_without_replacement(n, k);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

TrainResult train_langid(const std::map<std::string, LabelData>& data,
                         const TrainOptions& options) {
  if (data.size() < 2) {
    throw Error("train_langid: need at least 2 labels, got " +
                std::to_string(data.size()));
  }
  if (options.split <= 0.0 || options.split >= 1.0) {
    throw Error("train_langid: split must lie in (0, 1)");
  }

  TrainResult result;
  for (const auto& [label, pools] : data) {
    (void)pools;
    result.model.labels.push_back(label);
  }

  struct PoolItem {
    std::string sentence;
    bool noisy;
  };
  std::vector<Example> examples;
  std::vector<std::pair<size_t, PoolItem>> train_items;

  char line[256];
  for (size_t li = 0; li < result.model.labels.size(); ++li) {
    const std::string& label = result.model.labels[li];
    const LabelData& pools = data.at(label);
    const size_t available = pools.clean.size() + pools.noisy.size();
    if (available < 10) {
      throw Error("train_langid: label " + label + " has only " +
                  std::to_string(available) + " sentences");
    }

    Rng sampler(derive_seed(options.seed, kSampleStream, li));
    std::vector<PoolItem> selected;
    std::vector<size_t> clean_taken;
    const auto take = [&](const std::vector<std::string>& pool, bool noisy,
                          size_t want) {
      for (const size_t idx : sample_indices(pool.size(), want, &sampler)) {
        selected.push_back({pool[idx], noisy});
        if (!noisy) clean_taken.push_back(idx);
      }
    };

    switch (options.setup) {
      case Setup::kClean:
        take(pools.clean, false, options.cap);
        break;
      case Setup::kNoisy:
        if (pools.noisy.empty()) {
          take(pools.clean, false, options.cap);
          result.log.push_back("label " + label +
                               ": no noisy data, using clean");
        } else {
          take(pools.noisy, true, options.cap);
        }
        break;
      case Setup::kMerged: {
        take(pools.clean, false, options.cap);
        take(pools.noisy, true, options.cap);
        const size_t target = 2 * options.cap;
        if (selected.size() < target && clean_taken.size() < pools.clean.size()) {
          // Top up towards parity with so-far unused clean sentences.
          std::vector<bool> used(pools.clean.size(), false);
          for (const size_t idx : clean_taken) used[idx] = true;
          std::vector<size_t> unused;
          for (size_t i = 0; i < pools.clean.size(); ++i) {
            if (!used[i]) unused.push_back(i);
          }
          const size_t extra =
              std::min(unused.size(), target - selected.size());
          for (const size_t idx :
               sample_indices(unused.size(), extra, &sampler)) {
            selected.push_back({pools.clean[unused[idx]], false});
          }
          if (extra > 0) {
            std::snprintf(line, sizeof(line),
                          "label %s: topped up with %zu extra clean",
                          label.c_str(), extra);
            result.log.push_back(line);
          }
        }
        if (selected.size() < target) {
          std::snprintf(line, sizeof(line),
                        "label %s: shortfall, %zu of %zu", label.c_str(),
                        selected.size(), target);
          result.log.push_back(line);
        }
        break;
      }
    }

    // Frozen split: shuffle the selection, first `split` fraction trains.
    Rng splitter(derive_seed(options.seed, kSplitStream, li));
    const std::vector<size_t> order =
        splitter.sample_without_replacement(selected.size(), selected.size());
    const size_t n_train = static_cast<size_t>(
        std::floor(options.split * static_cast<double>(selected.size())));
    size_t n_noisy = 0;
    for (size_t p = 0; p < order.size(); ++p) {
      const PoolItem& item = selected[order[p]];
      if (item.noisy) ++n_noisy;
      if (p < n_train) {
        train_items.push_back({li, item});
      } else {
        result.test.push_back({label, item.sentence, item.noisy});
      }
    }
    std::snprintf(line, sizeof(line),
                  "label %s: %zu sentences (%zu noisy), %zu train / %zu test",
                  label.c_str(), selected.size(), n_noisy, n_train,
                  selected.size() - n_train);
    result.log.push_back(line);
  }

  examples.reserve(train_items.size());
  for (const auto& [label_idx, item] : train_items) {
    examples.push_back(
        {label_idx, hash_features(item.sentence, result.model.buckets)});
  }

  LangIdModel& model = result.model;
  model.embeddings.assign(static_cast<size_t>(model.buckets) * model.dim,
                          0.0f);
  model.out_weights.assign(model.labels.size() * model.dim, 0.0f);
  Rng init(derive_seed(options.seed, kInitStream, 0));
  const double bound = 1.0 / model.dim;
  for (auto& value : model.embeddings) {
    value = static_cast<float>((2.0 * init.next_unit() - 1.0) * bound);
  }

  std::vector<double> hidden(model.dim, 0.0);
  std::vector<double> probs(model.labels.size(), 0.0);
  const uint64_t total_steps =
      static_cast<uint64_t>(options.epochs) * examples.size();
  uint64_t step = 0;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    Rng shuffler(derive_seed(options.seed, kShuffleStream, epoch));
    const std::vector<size_t> order =
        shuffler.sample_without_replacement(examples.size(), examples.size());
    double loss_sum = 0.0;
    for (const size_t index : order) {
      const double lr =
          options.learning_rate *
          (1.0 - static_cast<double>(step) / static_cast<double>(total_steps));
      loss_sum += sgd_step(&model, examples[index], lr, &hidden, &probs);
      ++step;
    }
    if (epoch == 0 || epoch == options.epochs - 1) {
      std::snprintf(line, sizeof(line), "epoch %d: avg loss %.4f", epoch,
                    loss_sum / std::max<size_t>(examples.size(), 1));
      result.log.push_back(line);
    }
  }
  return result;
}

std::vector<std::pair<std::string, double>> predict_topk(
    const LangIdModel& model, const std::string& sentence, size_t k) {
  if (trim(sentence).empty()) {
    throw Error("predict_topk: empty sentence");
  }
  if (k > model.labels.size()) {
    throw Error("predict_topk: k exceeds label count");
  }
  const std::vector<uint32_t> features =
      hash_features(sentence, model.buckets);

  std::vector<double> hidden(model.dim, 0.0);
  for (const uint32_t f : features) {
    const float* row = &model.embeddings[static_cast<size_t>(f) * model.dim];
    for (size_t d = 0; d < model.dim; ++d) hidden[d] += row[d];
  }
  if (!features.empty()) {
    for (auto& h : hidden) h /= features.size();
  }

  std::vector<double> logits(model.labels.size(), 0.0);
  double max_logit = -1e30;
  for (size_t l = 0; l < model.labels.size(); ++l) {
    const float* w = &model.out_weights[l * model.dim];
    for (size_t d = 0; d < model.dim; ++d) logits[l] += w[d] * hidden[d];
    max_logit = std::max(max_logit, logits[l]);
  }
  double z = 0.0;
  for (auto& logit : logits) {
    logit = std::exp(logit - max_logit);
    z += logit;
  }

  std::vector<size_t> order(model.labels.size());
  for (size_t l = 0; l < order.size(); ++l) order[l] = l;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return logits[a] > logits[b];
  });
  std::vector<std::pair<std::string, double>> top;
  for (size_t i = 0; i < k; ++i) {
    top.emplace_back(model.labels[order[i]], logits[order[i]] / z);
  }
  return top;
}

LangIdEval eval_langid(const LangIdModel& model,
                       const std::vector<TestItem>& test) {
  if (test.empty()) throw Error("eval_langid: empty test set");

  LangIdEval eval;
  eval.labels = model.labels;
  const size_t n_labels = model.labels.size();
  eval.confusion.assign(n_labels, std::vector<uint64_t>(n_labels, 0));

  std::vector<uint64_t> n(n_labels, 0);
  std::vector<uint64_t> hits1(n_labels, 0);
  std::vector<uint64_t> hits2(n_labels, 0);
  const size_t k2 = std::min<size_t>(2, n_labels);
  for (const auto& item : test) {
    const size_t gold = model.label_index(item.label);
    if (gold == std::string::npos) {
      throw Error("eval_langid: label " + item.label + " not in model");
    }
    const auto top = predict_topk(model, item.sentence, k2);
    ++n[gold];
    const size_t pred = model.label_index(top[0].first);
    ++eval.confusion[gold][pred];
    if (top[0].first == item.label) {
      ++hits1[gold];
      ++hits2[gold];
    } else if (k2 > 1 && top[1].first == item.label) {
      ++hits2[gold];
    }
  }

  const auto harmonic = [](double p, double r) {
    return (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
  };
  size_t present = 0;
  for (size_t l = 0; l < n_labels; ++l) {
    LabelScores scores;
    scores.n = n[l];
    if (n[l] > 0) {
      const double nd = static_cast<double>(n[l]);
      scores.p1 = hits1[l] / nd;
      scores.r1 = hits1[l] / nd;
      scores.f1 = harmonic(scores.p1, scores.r1);
      scores.p2 = hits2[l] / (static_cast<double>(k2) * nd);
      scores.r2 = hits2[l] / nd;
      scores.f2 = harmonic(scores.p2, scores.r2);
      ++present;
      eval.macro.p1 += scores.p1;
      eval.macro.r1 += scores.r1;
      eval.macro.f1 += scores.f1;
      eval.macro.p2 += scores.p2;
      eval.macro.r2 += scores.r2;
      eval.macro.f2 += scores.f2;
    }
    eval.macro.n += n[l];
    eval.per_label[model.labels[l]] = scores;
  }
  if (present > 0) {
    eval.macro.p1 /= present;
    eval.macro.r1 /= present;
    eval.macro.f1 /= present;
    eval.macro.p2 /= present;
    eval.macro.r2 /= present;
    eval.macro.f2 /= present;
  }
  return eval;
}

namespace {

std::string scores_row(const std::string& name, const LabelScores& scores) {
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%s,%llu,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f", name.c_str(),
                static_cast<unsigned long long>(scores.n), scores.p1,
                scores.r1, scores.f1, scores.p2, scores.r2, scores.f2);
  return buf;
}

}  // namespace

std::string eval_csv(const LangIdEval& eval) {
  std::string out = "label,n,p@1,r@1,f@1,p@2,r@2,f@2\n";
  for (const auto& label : eval.labels) {
    out += scores_row(label, eval.per_label.at(label)) + "\n";
  }
  out += scores_row("macro", eval.macro) + "\n";
  return out;
}

std::string confusion_csv(const LangIdEval& eval) {
  std::string out = "gold\\pred";
  for (const auto& label : eval.labels) out += "," + label;
  out += "\n";
  for (size_t g = 0; g < eval.labels.size(); ++g) {
    out += eval.labels[g];
    for (size_t p = 0; p < eval.labels.size(); ++p) {
      out += "," + std::to_string(eval.confusion[g][p]);
    }
    out += "\n";
  }
  return out;
}

namespace {

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T* value, const std::string& path) {
  in.read(reinterpret_cast<char*>(value), sizeof(T));
  if (!in) throw Error(path + ": truncated model file");
}

}  // namespace

void save_model(const LangIdModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kModelVersion);
  write_pod(out, static_cast<uint32_t>(model.labels.size()));
  for (const auto& label : model.labels) {
    write_pod(out, static_cast<uint32_t>(label.size()));
    out.write(label.data(), static_cast<std::streamsize>(label.size()));
  }
  write_pod(out, model.buckets);
  write_pod(out, model.dim);
  out.write(reinterpret_cast<const char*>(model.embeddings.data()),
            static_cast<std::streamsize>(model.embeddings.size() *
                                         sizeof(float)));
  out.write(reinterpret_cast<const char*>(model.out_weights.data()),
            static_cast<std::streamsize>(model.out_weights.size() *
                                         sizeof(float)));
  if (!out) throw Error("failed writing " + path);
}

LangIdModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(path + ": not a language-identifier model");
  }
  uint32_t version = 0;
  read_pod(in, &version, path);
  if (version != kModelVersion) {
    throw Error(path + ": unsupported model version " +
                std::to_string(version));
  }
  LangIdModel model;
  uint32_t n_labels = 0;
  read_pod(in, &n_labels, path);
  for (uint32_t i = 0; i < n_labels; ++i) {
    uint32_t len = 0;
    read_pod(in, &len, path);
    if (len > 64) throw Error(path + ": implausible label length");
    std::string label(len, '\0');
    in.read(label.data(), len);
    if (!in) throw Error(path + ": truncated model file");
    model.labels.push_back(std::move(label));
  }
  read_pod(in, &model.buckets, path);
  read_pod(in, &model.dim, path);
  model.embeddings.resize(static_cast<size_t>(model.buckets) * model.dim);
  model.out_weights.resize(model.labels.size() * model.dim);
  in.read(reinterpret_cast<char*>(model.embeddings.data()),
          static_cast<std::streamsize>(model.embeddings.size() *
                                       sizeof(float)));
  in.read(reinterpret_cast<char*>(model.out_weights.data()),
          static_cast<std::streamsize>(model.out_weights.size() *
                                       sizeof(float)));
  if (!in) throw Error(path + ": truncated model file");
  return model;
}

void save_test_items(const std::vector<TestItem>& items,
                     const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(items.size());
  for (const auto& item : items) {
    lines.push_back(item.label + "\t" + (item.noisy ? "1" : "0") + "\t" +
                    item.sentence);
  }
  write_lines(path, lines);
}

std::vector<TestItem> load_test_items(const std::string& path) {
  std::vector<TestItem> items;
  const auto lines = read_lines(path);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    if (lines[idx].empty()) continue;
    const auto fields = split_tsv(lines[idx]);
    if (fields.size() != 3 || (fields[1] != "0" && fields[1] != "1")) {
      throw ParseError(path, idx + 1,
                       "expected `label<TAB>noisy<TAB>sentence`");
    }
    items.push_back({fields[0], fields[2], fields[1] == "1"});
  }
  return items;
}

}  // namespace scriptnorm
