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

// Label families and the label registry: the five stages of change, the ten
// processes of change, and the twelve conversational "other" labels.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttmcorpus/error.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

enum class Family { kSoc, kPoc, kOther };

inline constexpr std::array<Family, 3> kAllFamilies = {Family::kSoc, Family::kPoc,
                                                       Family::kOther};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::kSoc: return "SOC";
    case Family::kPoc: return "POC";
    case Family::kOther: return "OTHER";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view text) {
  const std::string key = to_lower(trim(text));
  if (key == "soc") return Family::kSoc;
  if (key == "poc") return Family::kPoc;
  if (key == "other") return Family::kOther;
  return std::nullopt;
}

// A family label or the null label. Canonical label names never collide with
// the null spelling.
using Label = std::string;
inline const Label kNullLabel = "NULL";
inline bool is_null(const Label& l) { return l == kNullLabel; }

struct LabelInfo {
  std::string name;
  Family family;
  std::vector<std::string> aliases;
  std::string description;
};

// Canonical label inventory with case-insensitive lookup over names and
// aliases. Spaces and underscores in a lookup key are read as hyphens.
class LabelRegistry {
 public:
  static std::string key(std::string_view text) {
    std::string k = to_lower(trim(text));
    std::replace(k.begin(), k.end(), ' ', '-');
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
  }

  void add_label(LabelInfo info) {
    if (find(info.name) != nullptr) {
      throw Error(ErrorKind::kAmbiguousAlias, "label '" + info.name + "' already registered");
    }
    const std::size_t idx = labels_.size();
    for (const auto& a : info.aliases) bind(a, idx);
    bind(info.name, idx);
    labels_.push_back(std::move(info));
  }

  // Aliases may be added but never new labels.
  void add_alias(std::string_view canonical, std::string_view alias) {
    const LabelInfo* target = find(canonical);
    if (target == nullptr) {
      throw Error(ErrorKind::kUnknownLabel, "cannot alias unknown label '" + std::string(canonical) + "'");
    }
    const auto idx = static_cast<std::size_t>(target - labels_.data());
    if (const LabelInfo* existing = find(alias)) {
      if (existing == target) return;
      throw Error(ErrorKind::kAmbiguousAlias, "alias '" + std::string(alias) + "' already maps to '" +
                                                  existing->name + "'");
    }
    bind(alias, idx);
    labels_[idx].aliases.emplace_back(trim(alias));
  }

  // Override file: `canonical: alias, alias` per line, `#` comments.
  void apply_overrides(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view body = trim(strip_comment(line));
      if (body.empty()) continue;
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) {
        throw Error(ErrorKind::kBadFormat, "override line " + std::to_string(lineno) + ": expected 'label: alias, ...'");
      }
      const std::string_view canonical = trim(body.substr(0, colon));
      for (const auto& alias : split_list(body.substr(colon + 1))) {
        try {
          add_alias(canonical, alias);
        } catch (const Error& e) {
          throw e.with_context("override line " + std::to_string(lineno));
        }
      }
    }
  }

  // nullptr when the name resolves to nothing.
  const LabelInfo* find(std::string_view name_or_alias) const {
    const auto it = index_.find(key(name_or_alias));
    return it == index_.end() ? nullptr : &labels_[it->second];
  }

  const LabelInfo& at(std::string_view name_or_alias) const {
    const LabelInfo* info = find(name_or_alias);
    if (info == nullptr) throw Error(ErrorKind::kUnknownLabel, "'" + std::string(name_or_alias) + "'");
    return *info;
  }

  bool contains(std::string_view name_or_alias) const { return find(name_or_alias) != nullptr; }

  const std::vector<LabelInfo>& labels() const { return labels_; }

  std::vector<std::string> names(Family f) const {
    std::vector<std::string> out;
    for (const auto& l : labels_) {
      if (l.family == f) out.push_back(l.name);
    }
    return out;
  }

  // Every lookup key with the canonical label it resolves to.
  const std::map<std::string, std::size_t>& keys() const { return index_; }

 private:
  void bind(std::string_view text, std::size_t idx) {
    const std::string k = key(text);
    const auto [it, inserted] = index_.emplace(k, idx);
    if (!inserted && it->second != idx) {
      throw Error(ErrorKind::kAmbiguousAlias,
                  "'" + std::string(text) + "' already maps to '" + labels_[it->second].name + "'");
    }
  }

  std::vector<LabelInfo> labels_;
  std::map<std::string, std::size_t> index_;
};

namespace detail {
inline LabelRegistry make_builtin_registry() {
  LabelRegistry r;
  const auto add = [&r](std::string name, Family f, std::vector<std::string> aliases, std::string desc) {
    r.add_label(LabelInfo{std::move(name), f, std::move(aliases), std::move(desc)});
  };
  // Stages of change.
  add("Precontemplation", Family::kSoc, {"Precontmpltn"},
      "does not wish or know how to change; not observed in the role-play data");
  add("Contemplation", Family::kSoc, {"Contmpltn"}, "plans to change, typically within six months");
  add("Preparation", Family::kSoc, {"Preprtn"}, "taking steps to change, typically within a month");
  add("Action", Family::kSoc, {}, "has changed behavior and is making progress");
  add("Maintenance", Family::kSoc, {}, "changed for at least six months, avoiding relapse");

  // Processes of change.
  add("consciousness-raising", Family::kPoc, {"CR"}, "seeks information about the problem behavior");
  add("dramatic-relief", Family::kPoc, {"DR"}, "emotional experience relieved by appropriate action");
  add("substance-use-stimulus-control", Family::kPoc, {"substance-use", "stimulus-control"},
      "external substances or devices, cue removal; stimulus control not observed in the data");
  add("social-liberation", Family::kPoc, {"SL"}, "increase in social opportunities");
  add("self-re-evaluation", Family::kPoc, {"SR"}, "assessment of one's self-image");
  add("helping-relationships", Family::kPoc, {"HR"}, "caring and support for the change");
  add("counter-conditioning", Family::kPoc, {"CC", "counterconditioning"},
      "substituting a favorable behavior for an unfavorable one");
  add("reinforcement-management", Family::kPoc, {"RM"}, "consequences for steps in a direction");
  add("self-liberation", Family::kPoc, {"SeLi"}, "belief in the ability to change and commitment to it");
  add("environmental-re-evaluation", Family::kPoc, {"ER"},
      "how a habit affects one's social environment");

  // Other labels.
  add("question", Family::kOther, {}, "question");
  add("greeting", Family::kOther, {"GREET"}, "represents a greeting");
  add("goal", Family::kOther, {"GOAL"}, "weight loss goals");
  add("time-frame", Family::kOther, {"TimeFrame"}, "duration in time");
  add("bad-diet", Family::kOther, {}, "bad dietary choices");
  add("good-diet", Family::kOther, {}, "good dietary choices");
  add("lifestyle-undesired", Family::kOther, {"Lifestyle-undes"}, "bad lifestyle choices");
  add("acknowledge", Family::kOther, {}, "acknowledgments");
  add("frequency", Family::kOther, {}, "frequency of various behaviors");
  add("end", Family::kOther, {}, "end of conversation");
  add("device", Family::kOther, {}, "equipment that aids weight loss");
  add("current-weight", Family::kOther, {"currWeight"}, "current weight");
  return r;
}
}  // namespace detail

// Shared immutable instance; copy it to add aliases.
inline const LabelRegistry& builtin_registry() {
  static const LabelRegistry registry = detail::make_builtin_registry();
  return registry;
}

}  // namespace ttm
