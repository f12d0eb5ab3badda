// Copyright 2026 The Paraseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "paraseg/error.h"
#include "oracles.h"
#include "paraseg/humaneval.h"

using namespace paraseg;
using nlohmann::json;

namespace {

std::string temp_store(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() /
                 ("paraseg_he_" + name + ".jsonl");
  std::filesystem::remove(p);
  return p.string();
}

Judgment ab(std::string id, std::string a, std::string b, Preference p,
            std::int64_t ts) {
  return {std::move(id), "p", Mode::kAb, "d", {std::move(a), std::move(b)}, p,
          ts};
}

Judgment likert(std::string id, std::string sys, int score) {
  return {std::move(id), "p", Mode::kLikert, "d", {std::move(sys)}, score, 0};
}

// Manually advanced clock.
struct FakeClock {
  std::chrono::system_clock::time_point now{std::chrono::seconds(1700000000)};
  Study::Clock fn() {
    return [this] { return now; };
  }
};

}  // namespace

TEST_CASE("responses") {
  CHECK(std::get<Preference>(parse_response(Mode::kAb, "A")) == Preference::kA);
  CHECK(std::get<Preference>(parse_response(Mode::kAb, "b")) == Preference::kB);
  CHECK(std::get<Preference>(parse_response(Mode::kAb, "Tie")) ==
        Preference::kTie);
  CHECK_THROWS_AS(parse_response(Mode::kAb, "C"), ValidationError);
  CHECK_THROWS_AS(parse_response(Mode::kAb, 1), ValidationError);
  CHECK(std::get<int>(parse_response(Mode::kLikert, 5)) == 5);
  CHECK_THROWS_AS(parse_response(Mode::kLikert, 0), ValidationError);
  CHECK_THROWS_AS(parse_response(Mode::kLikert, 6), ValidationError);
  CHECK_THROWS_AS(parse_response(Mode::kLikert, 2.5), ValidationError);
  CHECK_THROWS_AS(parse_response(Mode::kLikert, "A"), ValidationError);
  CHECK(parse_mode("likert") == Mode::kLikert);
  CHECK(mode_name(Mode::kAb) == "ab");
  CHECK_THROWS_AS(parse_mode("x"), ValidationError);
}

TEST_CASE("judgment json round trip") {
  const Judgment j = ab("t-1", "x", "y", Preference::kTie, 42);
  const Judgment back = judgment_from_json(to_json(j));
  CHECK(back.trial_id == "t-1");
  CHECK(back.systems == j.systems);
  CHECK(std::get<Preference>(back.response) == Preference::kTie);
  CHECK(back.timestamp_ms == 42);
  const Judgment l = judgment_from_json(to_json(likert("t-2", "x", 4)));
  CHECK(std::get<int>(l.response) == 4);
  Judgment bad = j;
  bad.systems = {"x", "x"};
  CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("ELO matches the logistic update") {
  const EloState one = compute_elo({ab("t1", "x", "y", Preference::kA, 1)});
  CHECK(one.ratings.at("x") == doctest::Approx(1016.0));
  CHECK(one.ratings.at("y") == doctest::Approx(984.0));
  CHECK(one.games.at("x") == 1);

  const EloState tie = compute_elo({ab("t1", "x", "y", Preference::kTie, 1)});
  CHECK(tie.ratings.at("x") == 1000.0);

  std::vector<Judgment> games = {ab("t3", "y", "z", Preference::kA, 3),
                                 ab("t1", "x", "y", Preference::kA, 1),
                                 ab("t2", "x", "z", Preference::kB, 2)};
  const EloState s = compute_elo(games);
  std::map<std::string, double> r = {{"x", 1000}, {"y", 1000}, {"z", 1000}};
  auto play = [&](const char* a, const char* b, double sa) {
    auto [ra, rb] = oracle::elo_game(r[a], r[b], sa);
    r[a] = ra;
    r[b] = rb;
  };
  play("x", "y", 1);
  play("x", "z", 0);
  play("y", "z", 1);
  for (const auto& [name, rating] : r) {
    CHECK(s.ratings.at(name) == doctest::Approx(rating).epsilon(1e-9));
  }
  double sum = 0;
  for (const auto& [name, rating] : s.ratings) sum += rating;
  CHECK(sum == 3000.0);
  const json t = elo_table(s);
  CHECK(t["systems"].size() == 3);
  CHECK(t["systems"][0]["rating"].get<double>() >=
        t["systems"][1]["rating"].get<double>());
}

TEST_CASE("likert summaries") {
  const std::vector<Judgment> js = {likert("a", "x", 3), likert("b", "x", 5),
                                    likert("c", "y", 2)};
  const auto t = compute_likert(js);
  CHECK(t.at("x").mean == doctest::Approx(4.0));
  CHECK(t.at("x").stddev == doctest::Approx(std::sqrt(2.0)));
  CHECK(t.at("y").n == 1);
  CHECK(t.at("y").stddev == 0.0);
  CHECK(likert_for_system(js, "x").n == 2);
  CHECK(likert_table(t)["systems"][0]["system"] == "x");
  const std::vector<Judgment> mixed = {likert("a", "x", 3),
                                       ab("b", "x", "y", Preference::kA, 0)};
  CHECK(judgments_of_mode(mixed, Mode::kAb).size() == 1);
}

TEST_CASE("judgment store persists and rejects duplicates") {
  const std::string path = temp_store("store");
  {
    JudgmentStore store(path);
    store.append(ab("t1", "x", "y", Preference::kA, 1));
    store.append(likert("t2", "x", 4));
    CHECK_THROWS_AS(store.append(likert("t2", "x", 4)), DuplicateTrialError);
  }
  JudgmentStore reopened(path);
  CHECK(reopened.judgments().size() == 2);
  CHECK(reopened.contains("t1"));
  std::ofstream(path, std::ios::app) << to_json(likert("t1", "y", 2)).dump()
                                     << "\n";
  CHECK_THROWS_AS(JudgmentStore{path}, ParseError);
  std::filesystem::remove(path);

  JudgmentStore memory;
  memory.append(likert("m", "x", 1));
  CHECK(memory.judgments().size() == 1);
}

TEST_CASE("study issues each combination once per participant") {
  JudgmentStore store;
  FakeClock clock;
  Study study({{"d1", "d2"}, {"s1", "s2", "s3"}, 5}, store, clock.fn());
  std::set<std::string> keys;
  std::set<std::string> ids;
  for (int i = 0; i < 6; ++i) {
    auto t = study.next_trial("p", Mode::kAb);
    REQUIRE(t);
    CHECK(t->trial_id.size() == 18);
    CHECK(ids.insert(t->trial_id).second);
    CHECK(keys.insert(combination_key(Mode::kAb, t->doc_id, t->systems)).second);
    study.record(t->trial_id, "p", "A");
  }
  CHECK_FALSE(study.next_trial("p", Mode::kAb));
  CHECK(study.judgments().size() == 6);
  const auto counts = study.state().pair_counts;
  CHECK(counts.size() == 3);
  for (const auto& [pair, n] : counts) CHECK(n == 2);
  CHECK(study.next_trial("q", Mode::kAb));
}

TEST_CASE("study sampling prefers rarely judged pairs") {
  JudgmentStore store;
  FakeClock clock;
  Study study({{"d1"}, {"s1", "s2", "s3"}, 1}, store, clock.fn());
  auto t = study.next_trial("p", Mode::kAb);
  REQUIRE(t);
  study.record(t->trial_id, "p", "B");
  const auto weights = study.candidate_weights("q", Mode::kAb);
  REQUIRE(weights.size() == 3);
  std::vector<std::string> judged{"d1", t->systems[0], t->systems[1]};
  std::sort(judged.begin() + 1, judged.end());
  for (const auto& [id, w] : weights) {
    CHECK(w == doctest::Approx(id == judged ? 0.5 : 1.0));
  }
}

TEST_CASE("ab side order is randomized") {
  JudgmentStore store;
  FakeClock clock;
  Study study({{"d1"}, {"s1", "s2"}, 3}, store, clock.fn());
  int swapped = 0;
  for (int i = 0; i < 40; ++i) {
    auto t = study.next_trial("p" + std::to_string(i), Mode::kAb);
    REQUIRE(t);
    swapped += t->systems[0] == "s2";
  }
  CHECK(swapped > 5);
  CHECK(swapped < 35);
}

TEST_CASE("record errors") {
  JudgmentStore store;
  FakeClock clock;
  Study study({{"d1"}, {"s1", "s2"}, 1}, store, clock.fn());
  auto t = study.next_trial("p", Mode::kLikert);
  REQUIRE(t);
  CHECK_THROWS_AS(study.record("t-nope", "p", 3), UnknownTrialError);
  CHECK_THROWS_AS(study.record(t->trial_id, "q", 3), ValidationError);
  CHECK_THROWS_AS(study.record(t->trial_id, "p", 9), ValidationError);
  study.record(t->trial_id, "p", 3);
  CHECK_THROWS_AS(study.record(t->trial_id, "p", 3), DuplicateTrialError);
  CHECK_THROWS_AS(study.next_trial("", Mode::kAb), ValidationError);
  CHECK_THROWS_AS(Study({{"d"}, {"s", "s"}, 1}, store), ValidationError);
}

TEST_CASE("expired trials return to the pool") {
  JudgmentStore store;
  FakeClock clock;
  StudyConfig cfg{{"d1"}, {"s1"}, 1, std::chrono::seconds(60)};
  Study study(cfg, store, clock.fn());
  auto t = study.next_trial("p", Mode::kLikert);
  REQUIRE(t);
  CHECK_FALSE(study.next_trial("p", Mode::kLikert));
  CHECK(study.in_flight() == 1);
  clock.now += std::chrono::seconds(61);
  auto again = study.next_trial("p", Mode::kLikert);
  REQUIRE(again);
  CHECK(again->trial_id != t->trial_id);
  CHECK(study.state().system_counts.at("s1") == 1);
  CHECK_THROWS_AS(study.record(t->trial_id, "p", 2), UnknownTrialError);
}

TEST_CASE("restart replays the store") {
  const std::string path = temp_store("replay");
  FakeClock clock;
  StudyConfig cfg{{"d1", "d2"}, {"s1", "s2"}, 11};
  {
    JudgmentStore store(path);
    Study study(cfg, store, clock.fn());
    for (int i = 0; i < 2; ++i) {
      auto t = study.next_trial("p", Mode::kAb);
      REQUIRE(t);
      study.record(t->trial_id, "p", "A");
    }
  }
  JudgmentStore store(path);
  Study study(cfg, store, clock.fn());
  CHECK(study.judgments().size() == 2);
  CHECK_FALSE(study.next_trial("p", Mode::kAb));
  CHECK(study.state().pair_counts.begin()->second == 2);
  std::filesystem::remove(path);
}
