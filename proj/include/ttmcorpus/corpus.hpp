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

// Dialogues, transcripts, corpus statistics and structural validation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttmcorpus/error.hpp"
#include "ttmcorpus/features.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/markup.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

enum class Role { kSeeker, kHelper };

inline std::string_view role_name(Role r) { return r == Role::kSeeker ? "seeker" : "helper"; }

inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "seeker") return Role::kSeeker;
  if (s == "helper") return Role::kHelper;
  return std::nullopt;
}

struct Turn {
  Role role = Role::kSeeker;
  std::vector<AnnotatedSentence> sentences;

  bool operator==(const Turn&) const = default;
};

struct Dialogue {
  std::string id;
  std::vector<Turn> turns;
  std::optional<std::pair<std::string, std::string>> participant_ids;

  std::size_t sentence_count() const {
    std::size_t n = 0;
    for (const auto& t : turns) n += t.sentences.size();
    return n;
  }
  bool operator==(const Dialogue&) const = default;
};

struct Corpus {
  std::vector<Dialogue> dialogues;

  bool operator==(const Corpus&) const = default;
};

// Dialogue ids stay unique: a clashing id from `b` gets a numeric suffix.
inline Corpus concatenate(const Corpus& a, const Corpus& b) {
  Corpus out = a;
  std::set<std::string> ids;
  for (const auto& d : a.dialogues) ids.insert(d.id);
  for (Dialogue d : b.dialogues) {
    if (ids.contains(d.id)) {
      int n = 2;
      while (ids.contains(d.id + "-" + std::to_string(n))) ++n;
      d.id += "-" + std::to_string(n);
    }
    ids.insert(d.id);
    out.dialogues.push_back(std::move(d));
  }
  return out;
}

// Transcript format, one turn per line:
//
//   role<TAB>markup        role is `seeker` or `helper`
//   +role<TAB>markup       another sentence of the previous turn
//   # comment
//   # dialogue: <id>       names the next dialogue
//   # participants: a, b   participant ids of the next dialogue
//
// Blank lines separate dialogues. Dialogues without a name get
// `default_id`, then `default_id-2`, `default_id-3`, ...
inline Corpus parse_corpus(std::istream& in, const LabelRegistry& registry,
                           const std::string& default_id = "dialogue") {
  Corpus corpus;
  std::set<std::string> ids;
  std::optional<std::string> next_id;
  std::optional<std::pair<std::string, std::string>> next_participants;
  Dialogue cur;
  bool open = false;
  int unnamed = 0;

  const auto close = [&](int lineno) {
    if (!open) return;
    if (next_id) {
      cur.id = *next_id;
    } else {
      ++unnamed;
      cur.id = unnamed == 1 ? default_id : default_id + "-" + std::to_string(unnamed);
    }
    cur.participant_ids = next_participants;
    if (!ids.insert(cur.id).second) {
      throw Error(ErrorKind::kDuplicateDialogueId, "line " + std::to_string(lineno) + ": '" + cur.id + "'");
    }
    corpus.dialogues.push_back(std::move(cur));
    cur = Dialogue{};
    open = false;
    next_id.reset();
    next_participants.reset();
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view body = trim(line);
    if (body.empty()) {
      close(lineno);
      continue;
    }
    if (body.front() == '#') {
      const std::string_view directive = trim(body.substr(1));
      const auto colon = directive.find(':');
      if (colon != std::string_view::npos) {
        const std::string key = to_lower(trim(directive.substr(0, colon)));
        const std::string_view value = trim(directive.substr(colon + 1));
        if (key == "dialogue" && !open) {
          next_id = std::string(value);
        } else if (key == "participants" && !open) {
          const auto parts = split_list(value);
          if (parts.size() != 2) {
            throw Error(ErrorKind::kBadFormat, "line " + std::to_string(lineno) + ": participants needs two ids");
          }
          next_participants = std::make_pair(parts[0], parts[1]);
        }
      }
      continue;
    }

    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::kBadFormat, "line " + std::to_string(lineno) + ": expected role<TAB>markup");
    }
    std::string_view role_text = trim(std::string_view(line).substr(0, tab));
    const bool continuation = !role_text.empty() && role_text.front() == '+';
    if (continuation) role_text.remove_prefix(1);
    const auto role = parse_role(role_text);
    if (!role) {
      throw Error(ErrorKind::kBadRole, "line " + std::to_string(lineno) + ": '" + std::string(role_text) + "'");
    }
    AnnotatedSentence sentence;
    try {
      sentence = parse_sentence(std::string_view(line).substr(tab + 1), registry);
    } catch (const Error& e) {
      throw e.with_context("line " + std::to_string(lineno));
    }
    if (continuation) {
      if (!open || cur.turns.empty() || cur.turns.back().role != *role) {
        throw Error(ErrorKind::kBadContinuation,
                    "line " + std::to_string(lineno) + ": '+" + std::string(role_text) + "' does not continue a " +
                        std::string(role_text) + " turn");
      }
      cur.turns.back().sentences.push_back(std::move(sentence));
    } else {
      cur.turns.push_back(Turn{*role, {std::move(sentence)}});
    }
    open = true;
  }
  close(lineno);
  return corpus;
}

// Exactly one dialogue.
inline Dialogue parse_transcript(std::istream& in, const LabelRegistry& registry,
                                 const std::string& default_id = "dialogue") {
  Corpus c = parse_corpus(in, registry, default_id);
  if (c.dialogues.empty()) throw Error(ErrorKind::kEmptyDialogue, "transcript has no turns");
  if (c.dialogues.size() > 1) {
    throw Error(ErrorKind::kBadFormat, "transcript holds " + std::to_string(c.dialogues.size()) + " dialogues");
  }
  return std::move(c.dialogues.front());
}

inline void write_transcript(std::ostream& out, const Corpus& corpus) {
  bool first = true;
  for (const auto& d : corpus.dialogues) {
    if (!first) out << '\n';
    first = false;
    out << "# dialogue: " << d.id << '\n';
    if (d.participant_ids) {
      out << "# participants: " << d.participant_ids->first << ", " << d.participant_ids->second << '\n';
    }
    for (const auto& t : d.turns) {
      bool head = true;
      for (const auto& s : t.sentences) {
        out << (head ? "" : "+") << role_name(t.role) << '\t' << serialize_sentence(s) << '\n';
        head = false;
      }
    }
  }
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) return Rational{0, 1};
    const std::int64_t g = std::gcd(n, d);
    return Rational{n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

struct CorpusStats {
  std::size_t num_users = 0;
  std::size_t num_dialogues = 0;
  std::size_t num_turns = 0;
  std::size_t num_word_tokens = 0;
  Rational avg_turns_per_dialogue;

  bool operator==(const CorpusStats&) const = default;
};

// Word tokens use the preprocessing tokenizer, before stopword removal.
// Users are distinct participant ids; a dialogue without ids counts two.
inline CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats s;
  std::set<std::string> users;
  std::size_t anonymous = 0;
  for (const auto& d : c.dialogues) {
    ++s.num_dialogues;
    if (d.participant_ids) {
      users.insert(d.participant_ids->first);
      users.insert(d.participant_ids->second);
    } else {
      anonymous += 2;
    }
    for (const auto& t : d.turns) {
      ++s.num_turns;
      for (const auto& sent : t.sentences) s.num_word_tokens += tokenize(sent.plain_text).size();
    }
  }
  s.num_users = users.size() + anonymous;
  s.avg_turns_per_dialogue = Rational::of(static_cast<std::int64_t>(s.num_turns),
                                          static_cast<std::int64_t>(s.num_dialogues));
  return s;
}

enum class Severity { kWarning, kError };

enum class IssueKind { kSameFamilyNesting, kUnknownLabel, kEmptySentence, kSocOnHelper, kDuplicateDialogueId };

inline std::string_view issue_kind_name(IssueKind k) {
  switch (k) {
    case IssueKind::kSameFamilyNesting: return "SameFamilyNesting";
    case IssueKind::kUnknownLabel: return "UnknownLabel";
    case IssueKind::kEmptySentence: return "EmptySentence";
    case IssueKind::kSocOnHelper: return "SOCOnHelper";
    case IssueKind::kDuplicateDialogueId: return "DuplicateDialogueId";
  }
  return "?";
}

struct ValidationIssue {
  Severity severity = Severity::kError;
  IssueKind kind = IssueKind::kUnknownLabel;
  std::string dialogue_id;
  std::size_t turn = 0;
  std::size_t sentence = 0;
  std::string message;
};

// Reports, never throws. SOC spans in helper turns are warnings because the
// stage describes the seeker; everything else is an error.
inline std::vector<ValidationIssue> validate_corpus(const Corpus& c, const LabelRegistry& registry) {
  std::vector<ValidationIssue> issues;
  std::set<std::string> ids;
  for (const auto& d : c.dialogues) {
    if (!ids.insert(d.id).second) {
      issues.push_back({Severity::kError, IssueKind::kDuplicateDialogueId, d.id, 0, 0, "dialogue id repeated"});
    }
    for (std::size_t ti = 0; ti < d.turns.size(); ++ti) {
      const Turn& turn = d.turns[ti];
      for (std::size_t si = 0; si < turn.sentences.size(); ++si) {
        const AnnotatedSentence& s = turn.sentences[si];
        const auto issue = [&](Severity sev, IssueKind kind, std::string msg) {
          issues.push_back({sev, kind, d.id, ti, si, std::move(msg)});
        };
        if (trim(s.plain_text).empty()) issue(Severity::kError, IssueKind::kEmptySentence, "sentence has no text");
        bool soc_reported = false;
        for_each_span(s, [&](const SpanNode& n, const std::vector<const SpanNode*>& ancestors) {
          const LabelInfo* info = registry.find(n.label);
          if (info == nullptr || info->name != n.label || info->family != n.family) {
            issue(Severity::kError, IssueKind::kUnknownLabel,
                  "'" + n.label + "' is not a canonical " + std::string(family_name(n.family)) + " label");
          }
          for (const SpanNode* a : ancestors) {
            if (a->family == n.family) {
              issue(Severity::kError, IssueKind::kSameFamilyNesting,
                    "'" + n.label + "' nested inside '" + a->label + "' (" + std::string(family_name(n.family)) +
                        ") over \"" + std::string(covered_text(s, n)) + "\"");
              break;
            }
          }
          if (n.family == Family::kSoc && turn.role == Role::kHelper && !soc_reported) {
            soc_reported = true;
            issue(Severity::kWarning, IssueKind::kSocOnHelper, "SOC span '" + n.label + "' in a helper turn");
          }
        });
      }
    }
  }
  return issues;
}

}  // namespace ttm
