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

// Seeker stage tracking and the stage/process compatibility lint.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ttmcorpus/compatibility.hpp"
#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/markup.hpp"

namespace ttm {

struct SocEntry {
  std::size_t turn = 0;
  std::string stage;

  bool operator==(const SocEntry&) const = default;
};

// One entry per seeker turn carrying a SOC span: the widest such span in the
// turn, earliest on ties.
inline std::vector<SocEntry> track_soc(const Dialogue& d) {
  std::vector<SocEntry> out;
  for (std::size_t ti = 0; ti < d.turns.size(); ++ti) {
    const Turn& t = d.turns[ti];
    if (t.role != Role::kSeeker) continue;
    const SpanNode* best = nullptr;
    for (const auto& s : t.sentences) {
      for_each_span(s, [&](const SpanNode& n, const auto&) {
        if (n.family == Family::kSoc && (best == nullptr || n.width() > best->width())) best = &n;
      });
    }
    if (best != nullptr) out.push_back({ti, best->label});
  }
  return out;
}

// Stage in force when turn `turn` begins: the latest entry before it.
inline std::optional<std::string> current_soc(const std::vector<SocEntry>& track, std::size_t turn) {
  std::optional<std::string> cur;
  for (const auto& e : track) {
    if (e.turn >= turn) break;
    cur = e.stage;
  }
  return cur;
}

struct LintWarning {
  std::size_t turn = 0;
  std::size_t sentence = 0;
  std::string process;
  std::string stage;
  std::string text;

  bool operator==(const LintWarning&) const = default;
};

// Flags every process-of-change span, from either role, in a turn after the
// seeker's stage is known whose process the matrix does not mark for that
// stage. Advisory only.
inline std::vector<LintWarning> lint_dialogue(const Dialogue& d, const CompatibilityMatrix& m) {
  std::vector<LintWarning> out;
  const auto track = track_soc(d);
  for (std::size_t ti = 0; ti < d.turns.size(); ++ti) {
    const auto stage = current_soc(track, ti);
    if (!stage) continue;
    const Turn& t = d.turns[ti];
    for (std::size_t si = 0; si < t.sentences.size(); ++si) {
      const AnnotatedSentence& s = t.sentences[si];
      for_each_span(s, [&](const SpanNode& n, const auto&) {
        if (n.family == Family::kPoc && !m.compatible(*stage, n.label)) {
          out.push_back({ti, si, n.label, *stage, std::string(covered_text(s, n))});
        }
      });
    }
  }
  return out;
}

}  // namespace ttm
