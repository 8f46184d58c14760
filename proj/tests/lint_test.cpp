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

#include "support.hpp"

using namespace ttm;
using ttm::testing::dialogue_from_text;

TEST_CASE("stage tracking on the fixture", "[lint]") {
  const Dialogue d = ttm::testing::load_fixture("table2.tsv").dialogues.at(0);
  const auto track = track_soc(d);
  REQUIRE_FALSE(track.empty());
  CHECK(track[0] == SocEntry{1, "Action"});
  CHECK(d.turns[1].sentences[0].plain_text.find("Just started my weight loss journey") != std::string::npos);
  for (std::size_t i = 1; i < track.size(); ++i) CHECK(track[i].turn > track[i - 1].turn);
  for (const auto& e : track) CHECK(d.turns[e.turn].role == Role::kSeeker);
}

TEST_CASE("stage tracking rules", "[lint]") {
  CHECK(track_soc(dialogue_from_text("helper\t[Action : x]\nseeker\tno stage here\n")).empty());

  const auto two = track_soc(dialogue_from_text("seeker\t[Contemplation : soon]\nhelper\tok\nseeker\t[Action : now]\n"));
  CHECK(two == std::vector<SocEntry>{{0, "Contemplation"}, {2, "Action"}});

  // Widest span wins, earliest on ties, across the turn's sentences.
  CHECK(track_soc(dialogue_from_text("seeker\t[Action : ab] [Preparation : abcd]\n"))[0].stage == "Preparation");
  CHECK(track_soc(dialogue_from_text("seeker\t[Action : ab] [Preparation : cd]\n"))[0].stage == "Action");
  CHECK(track_soc(dialogue_from_text("seeker\t[Action : ab]\n+seeker\t[Maintenance : abc]\n"))[0].stage ==
        "Maintenance");

  const std::vector<SocEntry> track{{0, "Contemplation"}, {2, "Action"}};
  CHECK_FALSE(current_soc(track, 0).has_value());
  CHECK(current_soc(track, 1) == "Contemplation");
  CHECK(current_soc(track, 2) == "Contemplation");
  CHECK(current_soc(track, 3) == "Action");
}

TEST_CASE("incompatible suggestion is flagged", "[lint]") {
  const CompatibilityMatrix m = default_matrix();
  const auto action = lint_dialogue(
      dialogue_from_text("seeker\t[Action : Just started]\nhelper\t[CR : strength training is great]\n"), m);
  REQUIRE(action.size() == 1);
  CHECK(action[0] == LintWarning{1, 0, "consciousness-raising", "Action", "strength training is great"});

  CHECK(lint_dialogue(dialogue_from_text("seeker\t[Contemplation : soon]\nhelper\t[CR : strength training is great]\n"),
                      m)
            .empty());
  CHECK(lint_dialogue(dialogue_from_text("seeker\t[Preparation : next week]\nhelper\t[SeLi : you can do it]\n"), m)
            .empty());
  CHECK(lint_dialogue(dialogue_from_text("seeker\t[Action : x]\nhelper\thello\n"), m).empty());
  // Before any stage is known there is nothing to judge against.
  CHECK(lint_dialogue(dialogue_from_text("helper\t[CR : read labels]\nseeker\t[Action : x]\n"), m).empty());
  // Seeker spans count too, judged against the previous stage.
  const auto own = lint_dialogue(
      dialogue_from_text("seeker\t[Maintenance : holding]\nseeker\t[Action : [DR : scared]]\n"), m);
  REQUIRE(own.size() == 1);
  CHECK(own[0].stage == "Maintenance");
  CHECK(own[0].process == "dramatic-relief");
}

TEST_CASE("the fixture lints clean", "[lint]") {
  CHECK(lint_dialogue(ttm::testing::load_fixture("table2.tsv").dialogues.at(0), default_matrix()).empty());
}

TEST_CASE("adding a process span never removes a warning", "[lint][property]") {
  const CompatibilityMatrix m = default_matrix();
  const LabelRegistry r = builtin_registry();
  const auto stages = r.names(Family::kSoc);
  const auto processes = r.names(Family::kPoc);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Dialogue d;
    const std::size_t turns = rng.between(1, 8);
    for (std::size_t t = 0; t < turns; ++t) {
      Turn turn;
      turn.role = rng.bernoulli(0.5) ? Role::kSeeker : Role::kHelper;
      std::string markup;
      if (rng.bernoulli(0.5)) markup += "[" + rng.pick(stages) + " : stage words] ";
      if (rng.bernoulli(0.5)) markup += "[" + rng.pick(processes) + " : process words] ";
      markup += "tail";
      turn.sentences.push_back(parse_sentence(markup, r));
      d.turns.push_back(std::move(turn));
    }
    const auto before = lint_dialogue(d, m);
    Dialogue more = d;
    const std::size_t t = rng.below(more.turns.size());
    auto& s = more.turns[t].sentences[0];
    s = parse_sentence(serialize_sentence(s) + " [" + rng.pick(processes) + " : extra]", r);
    const auto after = lint_dialogue(more, m);
    for (const auto& w : before) {
      INFO("turn " << w.turn << " " << w.process);
      CHECK(std::find(after.begin(), after.end(), w) != after.end());
    }
    CHECK(after.size() >= before.size());
  }
}
