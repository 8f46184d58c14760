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

// Sentence-level Cohen's kappa between two annotators.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/segmentation.hpp"

namespace ttm {

// One label per sentence, reduced the same way as unsegmented gold.
inline std::vector<Label> sentence_labels(const Dialogue& d, Family f) {
  std::vector<Label> out;
  for (const auto& t : d.turns) {
    for (const auto& s : t.sentences) out.push_back(unsegmented_gold(s, f));
  }
  return out;
}

struct KappaResult {
  double value = 0.0;
  // Chance agreement is 1: both annotators used one and the same label.
  // `value` is then 1 by convention.
  bool degenerate = false;
};

// kappa = (p_o - p_e) / (1 - p_e) = (n*agree - sum_c a_c*b_c) / (n^2 - sum_c a_c*b_c),
// evaluated in integers and divided once.
inline KappaResult cohens_kappa(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "annotations have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " sentences");
  }
  if (a.empty()) throw Error(ErrorKind::kTooFewInstances, "no sentences to compare");
  std::map<Label, std::pair<std::int64_t, std::int64_t>> marginals;
  std::int64_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  const auto n = static_cast<std::int64_t>(a.size());
  std::int64_t chance = 0;
  for (const auto& [label, m] : marginals) chance += m.first * m.second;
  const std::int64_t num = n * agree - chance;
  const std::int64_t den = n * n - chance;
  if (den == 0) return {1.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace ttm
