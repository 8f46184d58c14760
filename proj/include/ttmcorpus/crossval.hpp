// Copyright 2026 The ttmcorpus Authors.
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

// Stratified k-fold cross-validation, the majority baseline, and accuracy
// reports. Vocabulary and model are rebuilt from each training split.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ttmcorpus/error.hpp"
#include "ttmcorpus/features.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/logreg.hpp"
#include "ttmcorpus/random.hpp"

namespace ttm {

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending

  std::size_t k() const { return folds.size(); }
};

// Indices of each label are shuffled, the per-label lists are concatenated
// in label order, and position p goes to fold p mod k. Fold sizes and
// per-label fold counts then differ by at most one.
inline FoldPlan kfold_plan(std::size_t n, std::size_t k, const std::vector<Label>& golds, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::kBadFormat, "k must be at least 2");
  if (golds.size() != n) throw Error(ErrorKind::kDimensionMismatch, "one label per instance required");
  if (n < k) {
    throw Error(ErrorKind::kTooFewInstances, std::to_string(n) + " instances for " + std::to_string(k) + " folds");
  }
  std::map<Label, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) by_label[golds[i]].push_back(i);
  Rng rng(seed);
  FoldPlan plan;
  plan.folds.resize(k);
  std::size_t pos = 0;
  for (auto& [label, idx] : by_label) {
    rng.shuffle(idx);
    for (const std::size_t i : idx) plan.folds[pos++ % k].push_back(i);
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

struct MajorityBaseline {
  Label label;
  double accuracy = 0.0;
};

// Most frequent label, lexicographically first on ties.
inline MajorityBaseline majority_baseline(const std::vector<Label>& golds) {
  if (golds.empty()) throw Error(ErrorKind::kTooFewInstances, "no instances");
  std::map<Label, std::size_t> counts;
  for (const auto& g : golds) ++counts[g];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return {best->first, static_cast<double>(best->second) / static_cast<double>(golds.size())};
}

struct ConstantPredictor {
  Label label;
  Label predict(const SparseVector&) const { return label; }
};

struct MajorityTrainer {
  ConstantPredictor operator()(const std::vector<SparseVector>&, const std::vector<Label>& golds, const Vocabulary&,
                               std::uint64_t) const {
    return {majority_baseline(golds).label};
  }
};

struct LogRegTrainer {
  TrainOptions options;

  LogRegModel operator()(const std::vector<SparseVector>& x, const std::vector<Label>& golds, const Vocabulary& vocab,
                         std::uint64_t seed) const {
    TrainOptions o = options;
    o.seed = seed;
    LogRegModel m = train_logreg(x, golds, vocab.size(), o);
    m.vocabulary = vocab;
    return m;
  }
};

struct EvalReport {
  double accuracy = 0.0;
  std::vector<Label> labels;                      // axis of the confusion matrix, sorted
  std::vector<std::vector<std::size_t>> confusion;  // [gold][predicted]
  std::vector<double> fold_accuracies;
  std::vector<std::size_t> fold_sizes;
  std::map<std::string, std::string> metadata;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& row : confusion) {
      for (const auto v : row) n += v;
    }
    return n;
  }
  std::size_t correct() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < confusion.size(); ++i) n += confusion[i][i];
    return n;
  }
};

// Pools (gold, predicted) pairs into a report; accuracy = trace / total.
inline EvalReport make_report(const std::vector<std::pair<Label, Label>>& pairs) {
  EvalReport r;
  std::set<Label> axis;
  for (const auto& [g, p] : pairs) {
    axis.insert(g);
    axis.insert(p);
  }
  r.labels.assign(axis.begin(), axis.end());
  r.confusion.assign(r.labels.size(), std::vector<std::size_t>(r.labels.size(), 0));
  const auto at = [&](const Label& l) {
    return static_cast<std::size_t>(std::lower_bound(r.labels.begin(), r.labels.end(), l) - r.labels.begin());
  };
  for (const auto& [g, p] : pairs) ++r.confusion[at(g)][at(p)];
  const std::size_t n = r.total();
  r.accuracy = n == 0 ? 0.0 : static_cast<double>(r.correct()) / static_cast<double>(n);
  return r;
}

struct LabeledTokens {
  std::vector<std::string> tokens;
  Label gold;
};

template <class Predictor>
EvalReport evaluate(const Predictor& predictor, const std::vector<LabeledTokens>& data, const Vocabulary& vocab) {
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& d : data) pairs.emplace_back(d.gold, predictor.predict(vectorize(d.tokens, vocab)));
  EvalReport r = make_report(pairs);
  r.fold_accuracies = {r.accuracy};
  r.fold_sizes = {data.size()};
  return r;
}

// Seen once per fold, after the training vocabulary is built.
using FoldObserver = std::function<void(std::size_t fold, const std::vector<std::size_t>& train,
                                        const std::vector<std::size_t>& test, const Vocabulary& vocab)>;

// Trainer: (train vectors, train golds, vocabulary, fold seed) -> predictor
// with `Label predict(const SparseVector&) const`. Fold f trains with
// derive_seed(seed, f); results are pooled in fold order.
template <class Trainer>
EvalReport cross_validate(const std::vector<LabeledTokens>& data, std::size_t k, std::uint64_t seed,
                          const Trainer& trainer, const FoldObserver& observer = {}) {
  std::vector<Label> golds;
  golds.reserve(data.size());
  for (const auto& d : data) golds.push_back(d.gold);
  const FoldPlan plan = kfold_plan(data.size(), k, golds, seed);

  std::vector<std::pair<Label, Label>> pooled;
  std::vector<double> fold_acc;
  std::vector<std::size_t> fold_sizes;
  std::vector<char> in_test(data.size());
  for (std::size_t f = 0; f < plan.k(); ++f) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (const std::size_t i : plan.folds[f]) in_test[i] = 1;
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!in_test[i]) train.push_back(i);
    }

    Vocabulary vocab;
    for (const std::size_t i : train) {
      for (const auto& tok : data[i].tokens) vocab.add(tok);
    }
    if (observer) observer(f, train, plan.folds[f], vocab);

    std::vector<SparseVector> x;
    std::vector<Label> y;
    for (const std::size_t i : train) {
      x.push_back(vectorize(data[i].tokens, vocab));
      y.push_back(data[i].gold);
    }
    const auto predictor = trainer(x, y, vocab, derive_seed(seed, f));

    std::size_t correct = 0;
    for (const std::size_t i : plan.folds[f]) {
      Label p = predictor.predict(vectorize(data[i].tokens, vocab));
      if (p == data[i].gold) ++correct;
      pooled.emplace_back(data[i].gold, std::move(p));
    }
    fold_sizes.push_back(plan.folds[f].size());
    fold_acc.push_back(static_cast<double>(correct) / static_cast<double>(plan.folds[f].size()));
  }
  EvalReport r = make_report(pooled);
  r.fold_accuracies = std::move(fold_acc);
  r.fold_sizes = std::move(fold_sizes);
  r.metadata["k"] = std::to_string(k);
  r.metadata["seed"] = std::to_string(seed);
  return r;
}

}  // namespace ttm
