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

// Shared helpers for the unit tests: fixture loading and a random span
// forest generator that builds markup and its expected parse side by side.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ttmcorpus.hpp"

namespace ttm::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TTM_TEST_DATA) + "/" + name; }

inline Corpus load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return parse_corpus(in, builtin_registry(), name);
}

inline Corpus corpus_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in, builtin_registry());
}

inline Dialogue dialogue_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_transcript(in, builtin_registry());
}

inline AnnotatedSentence parse(const std::string& markup) { return parse_sentence(markup, builtin_registry()); }

// A generated sentence: markup text plus the tree a correct parser must return.
struct RandomSentence {
  std::string markup;
  AnnotatedSentence expected;
};

class ForestGenerator {
 public:
  explicit ForestGenerator(std::uint64_t seed) : rng_(seed), registry_(builtin_registry()) {
    for (const auto& l : registry_.labels()) labels_.push_back(&l);
  }

  RandomSentence next() {
    RandomSentence out;
    unstarted_.clear();
    after_tag_ = false;
    const std::size_t pieces = rng_.between(0, 5);
    for (std::size_t i = 0; i < pieces; ++i) emit(out, out.expected.roots, 0);
    return out;
  }

 private:
  void whitespace(RandomSentence& out) {
    static const std::vector<std::string> gaps = {" ", "  ", "\t", " \t "};
    out.markup += rng_.pick(gaps);
  }

  void word(RandomSentence& out) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCXYZ0123456789,.!?'-:(){}";
    std::string w;
    const std::size_t len = rng_.between(1, 7);
    for (std::size_t i = 0; i < len; ++i) w += alphabet[rng_.below(alphabet.size())];
    if (!out.expected.plain_text.empty()) out.expected.plain_text += ' ';
    for (SpanNode* n : unstarted_) n->start = out.expected.plain_text.size();
    unstarted_.clear();
    out.markup += w;
    out.expected.plain_text += w;
  }

  // Appends one piece, a word or a span, with whitespace before it.
  void emit(RandomSentence& out, std::vector<SpanNode>& siblings, int depth) {
    if (out.markup.empty() || after_tag_ ? rng_.bernoulli(0.5) : true) whitespace(out);
    after_tag_ = false;
    if (depth >= 4 || rng_.bernoulli(0.5)) {
      word(out);
      return;
    }
    const LabelInfo* l = labels_[rng_.below(labels_.size())];
    // Tag text: canonical name or an alias, random case, optional family suffix.
    std::string tag = l->name;
    if (!l->aliases.empty() && rng_.bernoulli(0.5)) tag = rng_.pick(l->aliases);
    if (rng_.bernoulli(0.3)) tag = to_lower(tag);
    out.markup += "[" + tag;
    if (rng_.bernoulli(0.3)) {
      out.markup += "{" + std::string(family_name(l->family)) + "}";
    } else if (rng_.bernoulli(0.5)) {
      out.markup += " ";
    }
    out.markup += ":";
    after_tag_ = true;

    siblings.push_back(SpanNode{l->name, l->family, 0, 0, {}});
    const std::size_t self = siblings.size() - 1;
    unstarted_.push_back(&siblings[self]);
    const std::size_t text_before = out.expected.plain_text.size();
    const std::size_t n = rng_.between(1, 3);
    for (std::size_t i = 0; i < n; ++i) emit(out, siblings[self].children, depth + 1);
    if (out.expected.plain_text.size() == text_before) {
      whitespace(out);
      word(out);
    }
    siblings[self].end = out.expected.plain_text.size();
    if (rng_.bernoulli(0.3)) whitespace(out);
    out.markup += "]";
  }

  Rng rng_;
  LabelRegistry registry_;
  std::vector<const LabelInfo*> labels_;
  // Spans whose first word has not been written yet.
  std::vector<SpanNode*> unstarted_;
  bool after_tag_ = false;
};

}  // namespace ttm::testing
