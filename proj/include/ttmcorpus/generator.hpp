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

// Synthetic annotated dialogues built from per-label utterance templates.
// Stands in for a real corpus in desk-scale experiments.

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ttmcorpus/builtin_data.hpp"
#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/markup.hpp"
#include "ttmcorpus/random.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

using WordList = std::vector<std::string>;

struct TemplatePools {
  std::map<Label, std::vector<WordList>> by_label;  // canonical label -> templates
  std::vector<WordList> filler;                     // NULL connectives
};

// `label<TAB>text` per line; `NULL` marks filler. Every registry label needs
// at least one template.
inline TemplatePools load_templates(std::istream& in, const LabelRegistry& registry) {
  TemplatePools pools;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tab = body.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::kBadFormat, "templates line " + std::to_string(lineno) + ": expected label<TAB>text");
    }
    const std::string_view head = trim(body.substr(0, tab));
    WordList words = split_ws(body.substr(tab + 1));
    for (const auto& w : words) {
      if (w.find_first_of("[]") != std::string::npos) {
        throw Error(ErrorKind::kBadFormat, "templates line " + std::to_string(lineno) + ": brackets are markup");
      }
    }
    if (words.empty()) throw Error(ErrorKind::kBadFormat, "templates line " + std::to_string(lineno) + ": empty text");
    if (head == kNullLabel) {
      pools.filler.push_back(std::move(words));
      continue;
    }
    const LabelInfo* info = registry.find(head);
    if (info == nullptr) {
      throw Error(ErrorKind::kUnknownLabel, "templates line " + std::to_string(lineno) + ": '" + std::string(head) + "'");
    }
    pools.by_label[info->name].push_back(std::move(words));
  }
  for (const auto& l : registry.labels()) {
    if (!pools.by_label.contains(l.name)) throw Error(ErrorKind::kMissingRow, "no template for label '" + l.name + "'");
  }
  if (pools.filler.empty()) throw Error(ErrorKind::kMissingRow, "no NULL filler templates");
  return pools;
}

inline TemplatePools builtin_templates(const LabelRegistry& registry) {
  std::istringstream in{std::string(builtin::kTemplates)};
  return load_templates(in, registry);
}

struct GeneratorSpec {
  TemplatePools pools;
  std::size_t min_turns = 6;
  std::size_t max_turns = 14;
  // Chance that a rendered word is swapped for a word from another label.
  double noise = 0.2;
  // Chance that a turn carries a second sentence.
  double second_sentence = 0.1;
  std::uint64_t seed = 7;
};

inline void check_spec(const GeneratorSpec& spec) {
  if (!(spec.noise >= 0.0 && spec.noise < 1.0)) throw Error(ErrorKind::kBadFormat, "noise must lie in [0, 1)");
  if (spec.min_turns == 0 || spec.min_turns > spec.max_turns) {
    throw Error(ErrorKind::kBadFormat, "dialogue length range must satisfy 1 <= min <= max");
  }
  if (spec.pools.by_label.empty() || spec.pools.filler.empty()) throw Error(ErrorKind::kBadFormat, "empty template pools");
}

namespace detail {

class DialogueWriter {
 public:
  DialogueWriter(const GeneratorSpec& spec, const LabelRegistry& registry)
      : spec_(spec), registry_(registry), rng_(spec.seed) {
    for (const auto& [label, pool] : spec.pools.by_label) {
      labels_.push_back(label);
      families_[label] = registry.at(label).family;
    }
    for (const auto f : kAllFamilies) {
      for (const auto& l : labels_) {
        if (families_[l] == f) by_family_[f].push_back(l);
      }
    }
    for (const auto& l : by_family_[Family::kOther]) {
      (conversational(l) ? chat_ : detail_).push_back(l);
    }
    if (chat_.empty()) chat_ = by_family_[Family::kOther];
    if (detail_.empty()) detail_ = by_family_[Family::kOther];
  }

  // Up to `budget` sentences; returns the dialogue and the count used.
  Dialogue dialogue(const std::string& id, std::size_t index, std::size_t budget) {
    Dialogue d;
    d.id = id;
    char a[32], b[32];
    std::snprintf(a, sizeof a, "p%04zua", index);
    std::snprintf(b, sizeof b, "p%04zub", index);
    d.participant_ids = std::make_pair(std::string(a), std::string(b));
    const std::size_t turns = rng_.between(spec_.min_turns, spec_.max_turns);
    Role role = Role::kHelper;
    for (std::size_t t = 0; t < turns && budget > 0; ++t) {
      Turn turn{role, {}};
      const std::size_t sentences = rng_.bernoulli(spec_.second_sentence) ? 2 : 1;
      for (std::size_t s = 0; s < sentences && budget > 0; ++s, --budget) {
        turn.sentences.push_back(parse_sentence(role == Role::kSeeker ? seeker() : helper(), registry_));
      }
      d.turns.push_back(std::move(turn));
      role = role == Role::kHelper ? Role::kSeeker : Role::kHelper;
    }
    return d;
  }

 private:
  static bool conversational(const Label& l) {
    return l == "greeting" || l == "acknowledge" || l == "question" || l == "end";
  }

  std::string words(const Label& label) {
    const WordList& tpl = rng_.pick(spec_.pools.by_label.at(label));
    std::string out;
    for (const auto& w : tpl) {
      std::string word = w;
      if (spec_.noise > 0.0 && rng_.bernoulli(spec_.noise)) {
        const Label* other = &rng_.pick(labels_);
        while (*other == label) other = &rng_.pick(labels_);
        word = rng_.pick(rng_.pick(spec_.pools.by_label.at(*other)));
      }
      if (!out.empty()) out += ' ';
      out += word;
    }
    return out;
  }

  std::string filler() {
    std::string out;
    for (const auto& w : rng_.pick(spec_.pools.filler)) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }

  std::string span(const Label& label, const std::string& content) { return "[" + label + " : " + content + "]"; }

  std::string simple(const Label& label) { return span(label, words(label)); }

  // Outer span of `label` with an optional nested span of `inner`.
  std::string nested(const Label& label, const std::vector<Label>& inner, double p_inner) {
    std::string content = words(label);
    if (rng_.bernoulli(p_inner)) {
      const std::string piece = simple(rng_.pick(inner));
      content = rng_.bernoulli(0.5) ? content + " " + filler() + " " + piece : piece + " " + filler() + " " + content;
    }
    return span(label, content);
  }

  std::string seeker() {
    if (rng_.bernoulli(0.15)) {
      std::string s = simple(rng_.pick(chat_));
      if (rng_.bernoulli(0.4)) s += " " + simple(rng_.pick(detail_));
      return s;
    }
    std::string s;
    if (rng_.bernoulli(0.3)) s = simple(rng_.pick(chat_)) + " ";
    std::vector<Label> inner = by_family_[Family::kPoc];
    inner.insert(inner.end(), detail_.begin(), detail_.end());
    if (rng_.bernoulli(0.9)) {
      s += nested(rng_.pick(by_family_[Family::kSoc]), inner, 0.6);
    } else {
      s += filler() + " " + simple(rng_.pick(inner));
    }
    return s;
  }

  std::string helper() {
    if (rng_.bernoulli(0.25)) {
      std::string s = simple(rng_.pick(chat_));
      if (rng_.bernoulli(0.3)) s += " " + simple(rng_.pick(chat_));
      return s;
    }
    std::string s;
    if (rng_.bernoulli(0.3)) s = simple(rng_.pick(chat_)) + " ";
    if (rng_.bernoulli(0.85)) {
      s += nested(rng_.pick(by_family_[Family::kPoc]), detail_, 0.5);
    } else {
      s += filler() + " " + simple(rng_.pick(detail_));
    }
    return s;
  }

  const GeneratorSpec& spec_;
  const LabelRegistry& registry_;
  Rng rng_;
  std::vector<Label> labels_;
  std::map<Label, Family> families_;
  std::map<Family, std::vector<Label>> by_family_;
  std::vector<Label> chat_;
  std::vector<Label> detail_;
};

inline std::string synthetic_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "syn-%04zu", i + 1);
  return buf;
}

}  // namespace detail

// Alternating turns starting with the helper; deterministic given the seed.
inline Corpus generate_corpus(const GeneratorSpec& spec, std::size_t n_dialogues,
                              const LabelRegistry& registry = builtin_registry()) {
  check_spec(spec);
  detail::DialogueWriter w(spec, registry);
  Corpus c;
  for (std::size_t i = 0; i < n_dialogues; ++i) {
    c.dialogues.push_back(w.dialogue(detail::synthetic_id(i), i + 1, static_cast<std::size_t>(-1)));
  }
  return c;
}

// Same stream, cut off once exactly `n_sentences` sentences exist.
inline Corpus generate_corpus_sentences(const GeneratorSpec& spec, std::size_t n_sentences,
                                        const LabelRegistry& registry = builtin_registry()) {
  check_spec(spec);
  detail::DialogueWriter w(spec, registry);
  Corpus c;
  std::size_t left = n_sentences;
  for (std::size_t i = 0; left > 0; ++i) {
    Dialogue d = w.dialogue(detail::synthetic_id(i), i + 1, left);
    left -= d.sentence_count();
    c.dialogues.push_back(std::move(d));
  }
  return c;
}

}  // namespace ttm
