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

// JSON interchange mirroring Corpus / Dialogue / Turn / AnnotatedSentence /
// SpanNode field for field. Keys keep insertion order so output is stable.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/markup.hpp"

namespace ttm {

using Json = nlohmann::ordered_json;

inline Json to_json(const SpanNode& n) {
  Json j;
  j["label"] = n.label;
  j["family"] = family_name(n.family);
  j["start"] = n.start;
  j["end"] = n.end;
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(to_json(c));
  j["children"] = std::move(kids);
  return j;
}

inline Json to_json(const AnnotatedSentence& s) {
  Json j;
  j["plain_text"] = s.plain_text;
  Json roots = Json::array();
  for (const auto& r : s.roots) roots.push_back(to_json(r));
  j["roots"] = std::move(roots);
  return j;
}

inline Json to_json(const Dialogue& d) {
  Json j;
  j["id"] = d.id;
  if (d.participant_ids) {
    j["participant_ids"] = Json::array({d.participant_ids->first, d.participant_ids->second});
  } else {
    j["participant_ids"] = nullptr;
  }
  Json turns = Json::array();
  for (const auto& t : d.turns) {
    Json jt;
    jt["role"] = role_name(t.role);
    Json sents = Json::array();
    for (const auto& s : t.sentences) sents.push_back(to_json(s));
    jt["sentences"] = std::move(sents);
    turns.push_back(std::move(jt));
  }
  j["turns"] = std::move(turns);
  return j;
}

inline Json to_json(const Corpus& c) {
  Json j;
  Json ds = Json::array();
  for (const auto& d : c.dialogues) ds.push_back(to_json(d));
  j["dialogues"] = std::move(ds);
  return j;
}

namespace detail {

inline SpanNode span_from_json(const Json& j) {
  SpanNode n;
  n.label = j.at("label").get<std::string>();
  const auto fam = parse_family(j.at("family").get<std::string>());
  if (!fam) throw Error(ErrorKind::kBadFormat, "unknown family '" + j.at("family").get<std::string>() + "'");
  n.family = *fam;
  n.start = j.at("start").get<std::size_t>();
  n.end = j.at("end").get<std::size_t>();
  for (const auto& c : j.at("children")) n.children.push_back(span_from_json(c));
  return n;
}

}  // namespace detail

// Throws BadFormat on schema errors or spans that break the forest invariants.
inline Corpus corpus_from_json(const Json& j) {
  try {
    Corpus c;
    for (const auto& jd : j.at("dialogues")) {
      Dialogue d;
      d.id = jd.at("id").get<std::string>();
      const Json& pids = jd.at("participant_ids");
      if (!pids.is_null()) {
        if (pids.size() != 2) throw Error(ErrorKind::kBadFormat, "participant_ids needs two entries");
        d.participant_ids = std::make_pair(pids[0].get<std::string>(), pids[1].get<std::string>());
      }
      for (const auto& jt : jd.at("turns")) {
        const auto role = parse_role(jt.at("role").get<std::string>());
        if (!role) throw Error(ErrorKind::kBadRole, jt.at("role").get<std::string>());
        Turn t{*role, {}};
        for (const auto& js : jt.at("sentences")) {
          AnnotatedSentence s;
          s.plain_text = js.at("plain_text").get<std::string>();
          for (const auto& r : js.at("roots")) s.roots.push_back(detail::span_from_json(r));
          if (auto bad = find_invariant_violation(s)) throw Error(ErrorKind::kBadFormat, "dialogue '" + d.id + "': " + *bad);
          t.sentences.push_back(std::move(s));
        }
        if (t.sentences.empty()) throw Error(ErrorKind::kBadFormat, "dialogue '" + d.id + "' has a turn without sentences");
        d.turns.push_back(std::move(t));
      }
      c.dialogues.push_back(std::move(d));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kBadFormat, e.what());
  }
}

}  // namespace ttm
