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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "support.hpp"

using namespace ttm;
using ttm::testing::dialogue_from_text;
using ttm::testing::direct_kappa;

namespace {

std::vector<Label> random_labels(Rng& rng, std::size_t n, std::size_t kinds) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("L" + std::to_string(rng.below(kinds)));
  return out;
}

}  // namespace

TEST_CASE("kappa examples", "[kappa]") {
  const std::vector<Label> a{"x", "y", "x", "z", "y"};
  CHECK(std::abs(cohens_kappa(a, a).value - 1.0) <= 1e-12);
  CHECK_FALSE(cohens_kappa(a, a).degenerate);
  CHECK(cohens_kappa({"x", "x", "y", "y"}, {"x", "y", "x", "y"}).value == 0.0);
  // Complete disagreement on two balanced labels.
  CHECK(cohens_kappa({"x", "y"}, {"y", "x"}).value == -1.0);
}

TEST_CASE("kappa degenerate and error cases", "[kappa]") {
  const auto same = cohens_kappa({"x", "x", "x"}, {"x", "x", "x"});
  CHECK(same.degenerate);
  CHECK(same.value == 1.0);
  CHECK_FALSE(cohens_kappa({"x", "x"}, {"y", "y"}).degenerate);
  CHECK(cohens_kappa({"x", "x"}, {"y", "y"}).value == 0.0);
  CHECK_THROWS_MATCHES(cohens_kappa({"x"}, {"x", "y"}), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::kDimensionMismatch;
                       }));
  CHECK_THROWS_AS(cohens_kappa({}, {}), Error);
}

TEST_CASE("kappa matches the direct formula", "[kappa][property]") {
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = rng.between(2, 200);
    const std::size_t kinds = rng.between(2, 6);
    const auto a = random_labels(rng, n, kinds);
    auto b = a;
    // Mix of agreement levels: copy and corrupt a random fraction.
    const double flip = rng.uniform();
    for (auto& l : b) {
      if (rng.bernoulli(flip)) l = "L" + std::to_string(rng.below(kinds));
    }
    const auto k = cohens_kappa(a, b);
    if (k.degenerate) continue;
    INFO("n=" << n << " kinds=" << kinds);
    CHECK(std::abs(k.value - direct_kappa(a, b)) <= 1e-12);
    CHECK(k.value >= -1.0);
    CHECK(k.value <= 1.0);
  }
}

TEST_CASE("kappa invariances", "[kappa][property]") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(2, 60);
    const auto a = random_labels(rng, n, 4);
    const auto b = random_labels(rng, n, 4);
    const double k = cohens_kappa(a, b).value;
    CHECK(cohens_kappa(b, a).value == k);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<Label> pa, pb;
    for (const auto i : perm) {
      pa.push_back(a[i]);
      pb.push_back(b[i]);
    }
    CHECK(cohens_kappa(pa, pb).value == k);

    const std::map<Label, Label> rename{{"L0", "q"}, {"L1", "L3x"}, {"L2", "a"}, {"L3", "L0"}};
    std::vector<Label> ra, rb;
    for (std::size_t i = 0; i < n; ++i) {
      ra.push_back(rename.at(a[i]));
      rb.push_back(rename.at(b[i]));
    }
    CHECK(cohens_kappa(ra, rb).value == k);
  }
}

TEST_CASE("independent random labelings average near zero", "[kappa][property]") {
  Rng rng(1000);
  double sum = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    sum += cohens_kappa(random_labels(rng, 1000, 4), random_labels(rng, 1000, 4)).value;
  }
  CHECK(std::abs(sum / 200.0) < 0.05);
}

TEST_CASE("sentence labels", "[kappa]") {
  const Dialogue d = ttm::testing::load_fixture("table2.tsv").dialogues.at(0);
  const auto soc = sentence_labels(d, Family::kSoc);
  REQUIRE(soc.size() == 20);
  CHECK(soc[0] == kNullLabel);
  CHECK(soc[1] == "Action");
  CHECK(soc[2] == kNullLabel);
  CHECK(soc[3] == "Contemplation");

  const Dialogue plain = dialogue_from_text("seeker\tjust words\nhelper\tmore words\n");
  for (const auto f : kAllFamilies) CHECK(sentence_labels(plain, f) == std::vector<Label>{kNullLabel, kNullLabel});
  CHECK(sentence_labels(dialogue_from_text("helper\tyou [SeLi : can do it]\n"), Family::kPoc) ==
        std::vector<Label>{"self-liberation"});
}
