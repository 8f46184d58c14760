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

// Independent reference computations shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ttmcorpus.hpp"

namespace ttm::testing {

// Kappa straight from the textbook formula in floating point.
inline double direct_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> ca, cb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  double pe = 0.0;
  for (const auto& [label, count] : ca) {
    const auto it = cb.find(label);
    if (it != cb.end()) pe += (count / n) * (it->second / n);
  }
  const double po = agree / n;
  return (po - pe) / (1.0 - pe);
}

struct GradProblem {
  LogRegParams params;
  std::vector<SparseVector> x;
  std::vector<std::size_t> y;
  double lambda = 0.0;
};

inline GradProblem random_grad_problem(Rng& rng) {
  GradProblem p;
  const std::size_t classes = rng.between(2, 5);
  const std::size_t features = rng.between(1, 10);
  const std::size_t n = rng.between(1, 20);
  p.params = LogRegParams(classes, features);
  for (double& w : p.params.weights) w = rng.uniform(-1.0, 1.0);
  for (double& b : p.params.biases) b = rng.uniform(-1.0, 1.0);
  p.lambda = rng.uniform(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector v;
    for (std::size_t j = 0; j < features; ++j) {
      if (rng.bernoulli(0.5)) v.entries.emplace_back(j, static_cast<double>(rng.between(1, 3)));
    }
    p.x.push_back(std::move(v));
    p.y.push_back(rng.below(classes));
  }
  return p;
}

// Max over all parameters of |analytic - numeric| / max(|analytic|, |numeric|)
// with central differences. The denominator is floored at 1e-8.
inline double gradient_check_error(GradProblem q, double h = 1e-5) {
  const auto g = nll_and_gradient(q.params, q.x, q.y, q.lambda).gradient;
  double worst = 0.0;
  const auto probe = [&](double& slot, double analytic) {
    const double saved = slot;
    slot = saved + h;
    const double up = nll_and_gradient(q.params, q.x, q.y, q.lambda).value;
    slot = saved - h;
    const double down = nll_and_gradient(q.params, q.x, q.y, q.lambda).value;
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  };
  for (std::size_t k = 0; k < q.params.weights.size(); ++k) probe(q.params.weights[k], g.weights[k]);
  for (std::size_t k = 0; k < q.params.biases.size(); ++k) probe(q.params.biases[k], g.biases[k]);
  return worst;
}

}  // namespace ttm::testing
