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

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace ttm;

using Tokens = std::vector<std::string>;

namespace {

const TokenPipelineConfig& pipeline() {
  static const TokenPipelineConfig cfg = TokenPipelineConfig::builtin();
  return cfg;
}

std::string join(const Tokens& t) {
  std::string out;
  for (const auto& s : t) out += (out.empty() ? "" : " ") + s;
  return out;
}

// All words in the shipped templates and the fixture: realistic vocabulary.
Tokens corpus_words() {
  Tokens out;
  const auto pools = builtin_templates(builtin_registry());
  for (const auto& [label, ts] : pools.by_label) {
    for (const auto& t : ts) {
      for (const auto& w : t) {
        const auto toks = tokenize(w);
        out.insert(out.end(), toks.begin(), toks.end());
      }
    }
  }
  for (const auto& d : ttm::testing::load_fixture("table2.tsv").dialogues) {
    for (const auto& t : d.turns) {
      for (const auto& s : t.sentences) {
        const auto toks = tokenize(s.plain_text);
        out.insert(out.end(), toks.begin(), toks.end());
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("tokenizer", "[features]") {
  CHECK(tokenize("Hi there!") == Tokens{"hi", "there"});
  CHECK(tokenize("245-250") == Tokens{"245", "250"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  ...!? ").empty());
  CHECK(tokenize("Didn't  HELP,me") == Tokens{"didn", "t", "help", "me"});
  CHECK(tokenize("caf\xc3\xa9 ok") == Tokens{"caf\xc3\xa9", "ok"});
}

TEST_CASE("lemmatizer", "[features]") {
  const Lemmatizer& lem = pipeline().lemmatizer;
  CHECK(lem("weight") == "weight");
  CHECK(lem("exercises") == "exercise");
  CHECK(lem("was") == "be");
  CHECK(lem("exercising") == "exercise");
  CHECK(lem("foods") == "food");
  CHECK(lem("studies") == "study");
  CHECK(lem("classes") == "class");
  CHECK(lem("watches") == "watch");
  CHECK(lem("stopped") == "stop");
  CHECK(lem("walked") == "walk");
  CHECK(lem("walking") == "walk");
  CHECK(lem("running") == "run");
  CHECK(lem("bus") == "bus");
  CHECK(lem("this") == "this");
  CHECK(lem("sing") == "sing");
  CHECK(lem("red") == "red");
  CHECK(lem("245") == "245");
}

TEST_CASE("shipped rule table is ordered longest suffix first", "[features]") {
  const auto& rules = pipeline().lemmatizer.rules();
  REQUIRE_FALSE(rules.empty());
  for (std::size_t i = 1; i < rules.size(); ++i) CHECK(rules[i - 1].suffix.size() >= rules[i].suffix.size());
  std::istringstream ex("x\ty\n"), bad("s - 1\nies y 2\n");
  CHECK_THROWS_AS(Lemmatizer::load(ex, bad), Error);
}

TEST_CASE("shipped data files match the compiled-in copies", "[features]") {
  std::ifstream sw(std::string(TTM_DATA_DIR) + "/stopwords.txt");
  CHECK(parse_stopwords(sw) == pipeline().stopwords);
  std::ifstream ex(std::string(TTM_DATA_DIR) + "/lemma_exceptions.txt");
  std::ifstream ru(std::string(TTM_DATA_DIR) + "/lemma_rules.txt");
  const Lemmatizer loaded = Lemmatizer::load(ex, ru);
  CHECK(loaded.exceptions() == pipeline().lemmatizer.exceptions());
  CHECK(loaded.rules().size() == pipeline().lemmatizer.rules().size());
  CHECK(pipeline().stopwords.size() >= 100);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_stopwords(empty), Error);
}

TEST_CASE("preprocess", "[features]") {
  CHECK(preprocess("I would like to lose weight", pipeline()) == Tokens{"like", "lose", "weight"});
  CHECK(preprocess("I would have been to the", pipeline()).empty());
  CHECK(preprocess("Exercising exercising", pipeline()) == Tokens{"exercise", "exercise"});
  CHECK(preprocess("", pipeline()).empty());
}

TEST_CASE("preprocess is idempotent", "[features][property]") {
  const Tokens words = corpus_words();
  REQUIRE(words.size() > 300);
  for (const auto& w : words) {
    INFO(w);
    const Tokens once = preprocess(w, pipeline());
    CHECK(preprocess(join(once), pipeline()) == once);
  }
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    const std::size_t n = rng.between(0, 12);
    for (std::size_t k = 0; k < n; ++k) text += rng.pick(words) + (rng.bernoulli(0.2) ? "ing, " : "s ");
    INFO(text);
    const Tokens once = preprocess(text, pipeline());
    CHECK(preprocess(join(once), pipeline()) == once);
  }
}

TEST_CASE("vocabulary and vectorize", "[features]") {
  Vocabulary v;
  CHECK(v.add("lose") == 0);
  CHECK(v.add("weight") == 1);
  CHECK(v.add("lose") == 0);
  CHECK(v.size() == 2);
  CHECK(vectorize({}, v).empty());
  CHECK(vectorize({"lose", "weight", "lose"}, v).entries ==
        std::vector<std::pair<std::size_t, double>>{{0, 2.0}, {1, 1.0}});
  CHECK(vectorize({"zumba"}, v).empty());
  CHECK(vectorize({"zumba", "weight"}, v) == vectorize({"weight"}, v));

  const Vocabulary built = build_vocabulary(std::vector<Tokens>{{"b", "a"}, {"c", "a", "d"}});
  CHECK(built.tokens() == Tokens{"b", "a", "c", "d"});
  CHECK(built.find("c") == 2u);
  CHECK_FALSE(built.find("z").has_value());
}

TEST_CASE("bag-of-words laws", "[features][property]") {
  Rng rng(11);
  const Tokens pool{"a", "b", "c", "d", "e", "f", "g", "oov1", "oov2"};
  Vocabulary v = build_vocabulary(std::vector<Tokens>{{"g", "a", "c", "e", "b", "d", "f"}});
  const auto add = [](const SparseVector& x, const SparseVector& y) {
    std::map<std::size_t, double> m;
    for (const auto& [i, c] : x.entries) m[i] += c;
    for (const auto& [i, c] : y.entries) m[i] += c;
    return SparseVector{{m.begin(), m.end()}};
  };
  for (int trial = 0; trial < 300; ++trial) {
    Tokens a, b;
    for (std::size_t i = rng.between(0, 10); i > 0; --i) a.push_back(rng.pick(pool));
    for (std::size_t i = rng.between(0, 10); i > 0; --i) b.push_back(rng.pick(pool));
    const SparseVector va = vectorize(a, v);
    for (std::size_t i = 1; i < va.entries.size(); ++i) CHECK(va.entries[i - 1].first < va.entries[i].first);
    for (const auto& [i, c] : va.entries) CHECK(c >= 1.0);
    Tokens shuffled = a;
    rng.shuffle(shuffled);
    CHECK(vectorize(shuffled, v) == va);
    Tokens ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(vectorize(ab, v) == add(va, vectorize(b, v)));
  }
  const Vocabulary frozen = v;
  (void)vectorize({"brand", "new", "tokens"}, v);
  CHECK(v == frozen);
}
