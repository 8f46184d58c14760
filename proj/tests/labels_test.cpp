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
#include <set>
#include <sstream>

#include "support.hpp"

using namespace ttm;

TEST_CASE("builtin registry has the full inventories", "[labels]") {
  const LabelRegistry r = builtin_registry();
  CHECK(r.names(Family::kSoc) ==
        std::vector<std::string>{"Precontemplation", "Contemplation", "Preparation", "Action", "Maintenance"});
  CHECK(r.names(Family::kPoc) == std::vector<std::string>{"consciousness-raising", "dramatic-relief",
                                                          "substance-use-stimulus-control", "social-liberation",
                                                          "self-re-evaluation", "helping-relationships",
                                                          "counter-conditioning", "reinforcement-management",
                                                          "self-liberation", "environmental-re-evaluation"});
  CHECK(r.names(Family::kOther) ==
        std::vector<std::string>{"question", "greeting", "goal", "time-frame", "bad-diet", "good-diet",
                                 "lifestyle-undesired", "acknowledge", "frequency", "end", "device",
                                 "current-weight"});
  for (const auto& l : r.labels()) CHECK_FALSE(l.description.empty());
}

TEST_CASE("lookup resolves names and aliases case-insensitively", "[labels]") {
  const LabelRegistry r = builtin_registry();
  CHECK(r.at("SeLi").name == "self-liberation");
  CHECK(r.at("SeLi").family == Family::kPoc);
  CHECK(r.at("contemplation").name == "Contemplation");
  CHECK(r.at("contemplation").family == Family::kSoc);
  CHECK(r.find("zumba") == nullptr);
  CHECK_THROWS_MATCHES(r.at("zumba"), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::kUnknownLabel;
                       }));

  const std::vector<std::pair<std::string, std::string>> aliases = {
      {"SR", "self-re-evaluation"},   {"SeLi", "self-liberation"},       {"CC", "counter-conditioning"},
      {"SL", "social-liberation"},    {"CR", "consciousness-raising"},   {"Contmpltn", "Contemplation"},
      {"Preprtn", "Preparation"},     {"TimeFrame", "time-frame"},       {"currWeight", "current-weight"},
      {"Lifestyle-undes", "lifestyle-undesired"}, {"GREET", "greeting"}, {"GOAL", "goal"}};
  for (const auto& [alias, name] : aliases) {
    INFO(alias);
    REQUIRE(r.contains(alias));
    CHECK(r.at(alias).name == name);
  }
  CHECK(r.at("self re evaluation").name == "self-re-evaluation");
  CHECK(r.at("bad_diet").name == "bad-diet");
  CHECK(r.at("  Action ").name == "Action");
}

TEST_CASE("alias resolution is a function over every key", "[labels][property]") {
  const LabelRegistry r = builtin_registry();
  // Every spelling of every label resolves back to that label and no other.
  std::map<std::string, std::string> owner;
  for (const auto& l : r.labels()) {
    std::vector<std::string> spellings = l.aliases;
    spellings.push_back(l.name);
    for (const auto& s : spellings) {
      const std::string k = LabelRegistry::key(s);
      const auto [it, inserted] = owner.emplace(k, l.name);
      INFO(s);
      CHECK((inserted || it->second == l.name));
      CHECK(r.at(s).name == l.name);
      CHECK(r.at(to_lower(s)).name == l.name);
    }
  }
  CHECK(owner.size() == r.keys().size());
  for (const auto& [k, idx] : r.keys()) CHECK(owner.at(k) == r.labels()[idx].name);
}

TEST_CASE("overrides add aliases but never labels", "[labels]") {
  LabelRegistry r = builtin_registry();
  std::istringstream ok("# comment\nself-liberation: willpower, self belief\n\n");
  r.apply_overrides(ok);
  CHECK(r.at("willpower").name == "self-liberation");
  CHECK(r.at("Self-Belief").name == "self-liberation");
  CHECK(r.labels().size() == 27);

  std::istringstream unknown("zumba: z\n");
  CHECK_THROWS_MATCHES(r.apply_overrides(unknown), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::kUnknownLabel;
                       }));
  std::istringstream clash("goal: CR\n");
  CHECK_THROWS_MATCHES(r.apply_overrides(clash), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::kAmbiguousAlias;
                       }));
  std::istringstream bad("no colon here\n");
  CHECK_THROWS_AS(r.apply_overrides(bad), Error);
}

TEST_CASE("default matrix cells", "[matrix]") {
  const CompatibilityMatrix m = default_matrix();
  CHECK(m.compatible("Precontemplation", "consciousness-raising"));
  CHECK_FALSE(m.compatible("Action", "consciousness-raising"));
  CHECK(m.compatible("Preparation", "self-liberation"));
  for (const auto& s : m.stages()) {
    const bool early = s == "Precontemplation" || s == "Contemplation" || s == "Preparation";
    CHECK(m.compatible(s, "consciousness-raising") == early);
  }
}

TEST_CASE("matrix rows and columns are non-empty", "[matrix][property]") {
  const CompatibilityMatrix m = default_matrix();
  CHECK(m.stages().size() == 5);
  CHECK(m.processes().size() == 10);
  for (const auto& p : m.processes()) {
    bool any = false;
    for (const auto& s : m.stages()) any = any || m.compatible(s, p);
    CHECK(any);
  }
  for (const auto& s : m.stages()) {
    bool any = false;
    for (const auto& p : m.processes()) any = any || m.compatible(s, p);
    CHECK(any);
  }
}

TEST_CASE("shipped matrix file matches the compiled-in default", "[matrix]") {
  std::ifstream in(std::string(TTM_DATA_DIR) + "/compatibility.txt");
  REQUIRE(in);
  CHECK(load_matrix(in, builtin_registry()) == default_matrix());
}

namespace {

std::string full_matrix_without(const std::string& skip) {
  std::string out = "# test matrix\n";
  const CompatibilityMatrix m = default_matrix();
  for (const auto& p : m.processes()) {
    if (p == skip) continue;
    out += p + ":";
    bool first = true;
    for (const auto& s : m.stages()) {
      if (!m.compatible(s, p)) continue;
      out += std::string(first ? " " : ", ") + s;
      first = false;
    }
    out += "\n";
  }
  return out;
}

ErrorKind load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load_matrix(in, builtin_registry());
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("load_matrix accepted the input");
  return ErrorKind::kIo;
}

}  // namespace

TEST_CASE("matrix loading errors", "[matrix]") {
  {
    std::istringstream in(full_matrix_without(""));
    CHECK(load_matrix(in, builtin_registry()) == default_matrix());
  }
  CHECK(load_error(full_matrix_without("dramatic-relief")) == ErrorKind::kMissingRow);
  CHECK(load_error(full_matrix_without("") + "zumba: Action\n") == ErrorKind::kUnknownLabel);
  CHECK(load_error(full_matrix_without("") + "goal: Action\n") == ErrorKind::kUnknownLabel);
  CHECK(load_error(full_matrix_without("") + "dramatic-relief: Action\n") == ErrorKind::kBadFormat);
  CHECK(load_error(full_matrix_without("helping-relationships") + "helping-relationships: Dancing\n") == ErrorKind::kUnknownLabel);
  // Aliases work on both axes.
  std::string aliased = full_matrix_without("consciousness-raising") + "CR: Precontemplation, Contmpltn, Preprtn\n";
  std::istringstream in(aliased);
  CHECK(load_matrix(in, builtin_registry()) == default_matrix());
  // A consciousness-raising row that reaches Action breaks the anchored cell.
  CHECK_THROWS_AS(
      [] {
        std::istringstream bad(full_matrix_without("consciousness-raising") +
                                "consciousness-raising: Precontemplation, Action\n");
        load_matrix(bad, builtin_registry());
      }(),
      Error);
}
