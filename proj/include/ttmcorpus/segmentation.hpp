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

// Oracle segmentation: each label family sees a sentence as a left-to-right
// run of its own spans and the unlabeled gaps between them.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/markup.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

enum class Mode { kUnsegmented, kSegmented };

inline std::string_view mode_name(Mode m) { return m == Mode::kSegmented ? "segmented" : "unsegmented"; }

struct Interval {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Interval&) const = default;
};

struct SentenceRef {
  std::size_t dialogue = 0;
  std::size_t turn = 0;
  std::size_t sentence = 0;

  bool operator==(const SentenceRef&) const = default;
};

struct Segment {
  std::string text;
  Family family = Family::kOther;
  Label label = kNullLabel;
  SentenceRef sentence;
  std::vector<Interval> intervals;

  bool operator==(const Segment&) const = default;
};

// All spans of family `f`, by start. Throws SameFamilyNesting if one of them
// sits inside another.
inline std::vector<const SpanNode*> family_spans(const AnnotatedSentence& s, Family f) {
  std::vector<const SpanNode*> out;
  for_each_span(s, [&](const SpanNode& n, const std::vector<const SpanNode*>& ancestors) {
    if (n.family != f) return;
    for (const SpanNode* a : ancestors) {
      if (a->family == f) {
        throw Error(ErrorKind::kSameFamilyNesting, "'" + n.label + "' inside '" + a->label + "'");
      }
    }
    out.push_back(&n);
  });
  std::stable_sort(out.begin(), out.end(), [](const SpanNode* a, const SpanNode* b) { return a->start < b->start; });
  return out;
}

// Gaps are trimmed; whitespace-only gaps produce no segment.
inline std::vector<Segment> flatten_family(const AnnotatedSentence& s, Family f, SentenceRef ref = {}) {
  std::vector<Segment> out;
  const auto gap = [&](std::size_t lo, std::size_t hi) {
    if (lo >= hi) return;
    const std::string_view text = trim(std::string_view(s.plain_text).substr(lo, hi - lo));
    if (text.empty()) return;
    out.push_back(Segment{std::string(text), f, kNullLabel, ref, {Interval{lo, hi}}});
  };
  std::size_t pos = 0;
  for (const SpanNode* n : family_spans(s, f)) {
    gap(pos, n->start);
    out.push_back(Segment{std::string(covered_text(s, *n)), f, n->label, ref, {Interval{n->start, n->end}}});
    pos = n->end;
  }
  gap(pos, s.plain_text.size());
  return out;
}

// Label of the family span covering the most text, earliest on ties; NULL
// when the family is absent. Nested spans of the family are allowed here.
inline Label unsegmented_gold(const AnnotatedSentence& s, Family f) {
  const SpanNode* best = nullptr;
  for_each_span(s, [&](const SpanNode& n, const auto&) {
    if (n.family != f) return;
    if (best == nullptr || n.width() > best->width() || (n.width() == best->width() && n.start < best->start)) {
      best = &n;
    }
  });
  return best == nullptr ? kNullLabel : best->label;
}

struct Instance {
  std::string text;
  Family family = Family::kOther;
  Label gold = kNullLabel;
  Mode origin = Mode::kUnsegmented;
  SentenceRef sentence;

  bool operator==(const Instance&) const = default;
};

// Corpus order, then sentence order, then left to right. Segmented mode keeps
// the NULL gap segments as NULL instances.
inline std::vector<Instance> extract_instances(const Corpus& c, Family f, Mode mode) {
  std::vector<Instance> out;
  for (std::size_t di = 0; di < c.dialogues.size(); ++di) {
    const Dialogue& d = c.dialogues[di];
    for (std::size_t ti = 0; ti < d.turns.size(); ++ti) {
      const Turn& t = d.turns[ti];
      for (std::size_t si = 0; si < t.sentences.size(); ++si) {
        const AnnotatedSentence& s = t.sentences[si];
        const SentenceRef ref{di, ti, si};
        if (mode == Mode::kUnsegmented) {
          out.push_back(Instance{s.plain_text, f, unsegmented_gold(s, f), mode, ref});
          continue;
        }
        std::vector<Segment> segs;
        try {
          segs = flatten_family(s, f, ref);
        } catch (const Error& e) {
          throw e.with_context("dialogue '" + d.id + "' turn " + std::to_string(ti) + " sentence " +
                               std::to_string(si));
        }
        for (auto& seg : segs) out.push_back(Instance{std::move(seg.text), f, std::move(seg.label), mode, ref});
      }
    }
  }
  return out;
}

}  // namespace ttm
