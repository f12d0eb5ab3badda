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

#include "paraseg/humaneval.h"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "paraseg/ingest.h"

namespace paraseg {

using nlohmann::json;

namespace {

constexpr char kKeySeparator = '\x1f';

// Rating deltas are rounded to multiples of 2^-32. Ratings stay far below
// 2^20, so every addition is exact and the rating sum is conserved.
constexpr double kEloQuantum = 0x1.0p-32;

std::int64_t to_ms(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             t.time_since_epoch())
      .count();
}

std::string pair_key(std::vector<std::string> systems) {
  std::sort(systems.begin(), systems.end());
  std::string key;
  for (const std::string& s : systems) {
    if (!key.empty()) key.push_back(kKeySeparator);
    key += s;
  }
  return key;
}

}  // namespace

std::string_view mode_name(Mode mode) {
  return mode == Mode::kAb ? "ab" : "likert";
}

Mode parse_mode(std::string_view name) {
  if (name == "ab") return Mode::kAb;
  if (name == "likert") return Mode::kLikert;
  throw ValidationError("unknown mode '" + std::string(name) + "'");
}

Response parse_response(Mode mode, const json& value) {
  if (mode == Mode::kAb) {
    if (!value.is_string()) {
      throw ValidationError("ab response must be \"A\", \"B\" or \"TIE\"");
    }
    std::string s = value.get<std::string>();
    for (char& c : s) c = static_cast<char>(std::toupper(c));
    if (s == "A") return Preference::kA;
    if (s == "B") return Preference::kB;
    if (s == "TIE") return Preference::kTie;
    throw ValidationError("ab response must be \"A\", \"B\" or \"TIE\"");
  }
  if (!value.is_number_integer()) {
    throw ValidationError("likert response must be an integer from 1 to 5");
  }
  const auto rating = value.get<std::int64_t>();
  if (rating < 1 || rating > 5) {
    throw ValidationError("likert response " + std::to_string(rating) +
                          " is outside 1..5");
  }
  return static_cast<int>(rating);
}

void validate(const Judgment& j) {
  if (j.trial_id.empty()) throw ValidationError("judgment without trial id");
  if (j.participant.empty()) {
    throw ValidationError("judgment without participant");
  }
  if (j.mode == Mode::kAb) {
    if (j.systems.size() != 2 || j.systems[0] == j.systems[1]) {
      throw ValidationError("ab judgment needs two distinct systems");
    }
    if (!std::holds_alternative<Preference>(j.response)) {
      throw ValidationError("ab judgment needs an A/B/TIE response");
    }
  } else {
    if (j.systems.size() != 1) {
      throw ValidationError("likert judgment needs exactly one system");
    }
    const int* rating = std::get_if<int>(&j.response);
    if (!rating || *rating < 1 || *rating > 5) {
      throw ValidationError("likert judgment needs a rating from 1 to 5");
    }
  }
}

json to_json(const Judgment& j) {
  json response;
  if (const auto* p = std::get_if<Preference>(&j.response)) {
    response = *p == Preference::kA ? "A" : *p == Preference::kB ? "B" : "TIE";
  } else {
    response = std::get<int>(j.response);
  }
  return {{"trial_id", j.trial_id},   {"participant", j.participant},
          {"mode", mode_name(j.mode)}, {"doc_id", j.doc_id},
          {"systems", j.systems},      {"response", response},
          {"timestamp", j.timestamp_ms}};
}

Judgment judgment_from_json(const json& j) {
  Judgment out;
  try {
    out.trial_id = j.at("trial_id").get<std::string>();
    out.participant = j.at("participant").get<std::string>();
    out.mode = parse_mode(j.at("mode").get<std::string>());
    out.doc_id = j.at("doc_id").get<std::string>();
    out.systems = j.at("systems").get<std::vector<std::string>>();
    out.response = parse_response(out.mode, j.at("response"));
    out.timestamp_ms = j.at("timestamp").get<std::int64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed judgment: ") + e.what());
  }
  validate(out);
  return out;
}

JudgmentStore::JudgmentStore(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
      for_each_jsonl(in, [&](const json& j, std::size_t line) {
        Judgment judgment = judgment_from_json(j);
        if (!trial_ids_.insert(judgment.trial_id).second) {
          throw ParseError("duplicate trial '" + judgment.trial_id +
                               "' in judgment store",
                           line, judgment.trial_id);
        }
        judgments_.push_back(std::move(judgment));
      });
    }
  }
  file_ = std::fopen(path_.c_str(), "ab");
  if (!file_) throw IoError("cannot open judgment store '" + path_ + "'");
}

JudgmentStore::~JudgmentStore() {
  if (file_) std::fclose(file_);
}

void JudgmentStore::append(const Judgment& judgment) {
  validate(judgment);
  if (contains(judgment.trial_id)) {
    throw DuplicateTrialError("trial '" + judgment.trial_id +
                              "' was already answered");
  }
  if (file_) {
    const std::string line = to_json(judgment).dump() + "\n";
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
        std::fflush(file_) != 0 || ::fsync(::fileno(file_)) != 0) {
      throw IoError("failed appending to judgment store '" + path_ + "'");
    }
  }
  trial_ids_.insert(judgment.trial_id);
  judgments_.push_back(judgment);
}

bool JudgmentStore::contains(const std::string& trial_id) const {
  return trial_ids_.count(trial_id) > 0;
}

double elo_expected(double rating, double opponent) {
  return 1.0 / (1.0 + std::pow(10.0, (opponent - rating) / 400.0));
}

EloState compute_elo(std::vector<Judgment> judgments, double k,
                     double initial) {
  std::sort(judgments.begin(), judgments.end(),
            [](const Judgment& a, const Judgment& b) {
              if (a.timestamp_ms != b.timestamp_ms) {
                return a.timestamp_ms < b.timestamp_ms;
              }
              return a.trial_id < b.trial_id;
            });
  EloState state;
  state.k = k;
  state.initial = initial;
  for (const Judgment& j : judgments) {
    if (j.mode != Mode::kAb) {
      throw ContractError("ELO takes ab judgments only");
    }
    validate(j);
    const std::string& a = j.systems[0];
    const std::string& b = j.systems[1];
    double& ra = state.ratings.try_emplace(a, initial).first->second;
    double& rb = state.ratings.try_emplace(b, initial).first->second;
    const Preference p = std::get<Preference>(j.response);
    const double score_a =
        p == Preference::kA ? 1.0 : p == Preference::kB ? 0.0 : 0.5;
    const double raw = k * (score_a - elo_expected(ra, rb));
    const double delta = std::round(raw / kEloQuantum) * kEloQuantum;
    ra += delta;
    rb -= delta;
    ++state.games[a];
    ++state.games[b];
  }
  return state;
}

std::vector<Judgment> judgments_of_mode(const std::vector<Judgment>& all,
                                        Mode mode) {
  std::vector<Judgment> out;
  for (const Judgment& j : all) {
    if (j.mode == mode) out.push_back(j);
  }
  return out;
}

std::map<std::string, LikertSummary> compute_likert(
    const std::vector<Judgment>& judgments) {
  std::map<std::string, std::vector<int>> ratings;
  for (const Judgment& j : judgments) {
    if (j.mode != Mode::kLikert) continue;
    validate(j);
    ratings[j.systems[0]].push_back(std::get<int>(j.response));
  }
  if (ratings.empty()) throw ContractError("no likert judgments");
  std::map<std::string, LikertSummary> out;
  for (const auto& [system, values] : ratings) {
    LikertSummary s;
    s.n = values.size();
    for (int v : values) s.mean += v;
    s.mean /= static_cast<double>(s.n);
    if (s.n > 1) {
      double ss = 0.0;
      for (int v : values) ss += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out[system] = s;
  }
  return out;
}

LikertSummary likert_for_system(const std::vector<Judgment>& judgments,
                                const std::string& system) {
  std::vector<Judgment> mine;
  for (const Judgment& j : judgments) {
    if (j.mode == Mode::kLikert && !j.systems.empty() &&
        j.systems[0] == system) {
      mine.push_back(j);
    }
  }
  if (mine.empty()) {
    throw ContractError("no likert judgments for system '" + system + "'");
  }
  return compute_likert(mine).at(system);
}

json elo_table(const EloState& state) {
  std::vector<std::pair<std::string, double>> rows(state.ratings.begin(),
                                                   state.ratings.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  json systems = json::array();
  for (const auto& [name, rating] : rows) {
    systems.push_back(
        {{"system", name}, {"rating", rating}, {"n", state.games.at(name)}});
  }
  return {{"k", state.k}, {"initial", state.initial}, {"systems", systems}};
}

json likert_table(const std::map<std::string, LikertSummary>& table) {
  std::vector<std::pair<std::string, LikertSummary>> rows(table.begin(),
                                                          table.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second.mean > b.second.mean;
  });
  json systems = json::array();
  for (const auto& [name, s] : rows) {
    systems.push_back(
        {{"system", name}, {"mean", s.mean}, {"std", s.stddev}, {"n", s.n}});
  }
  return {{"systems", systems}};
}

std::string combination_key(Mode mode, const std::string& doc_id,
                            std::vector<std::string> systems) {
  std::string key(mode_name(mode));
  key.push_back(kKeySeparator);
  key += doc_id;
  key.push_back(kKeySeparator);
  key += pair_key(std::move(systems));
  return key;
}

Study::Study(StudyConfig config, JudgmentStore& store, Clock clock)
    : config_(std::move(config)),
      store_(store),
      clock_(clock ? std::move(clock) : Clock(&std::chrono::system_clock::now)),
      rng_(config_.seed) {
  const std::set<std::string> systems(config_.systems.begin(),
                                      config_.systems.end());
  if (systems.size() != config_.systems.size()) {
    throw ValidationError("duplicate system ids in study");
  }
  if (config_.documents.empty() || config_.systems.empty()) {
    throw ValidationError("a study needs documents and systems");
  }
  for (const Judgment& j : store_.judgments()) {
    state_.seen[j.participant].insert(
        combination_key(j.mode, j.doc_id, j.systems));
    count_locked(j.mode, j.systems, +1);
  }
}

void Study::count_locked(Mode mode, const std::vector<std::string>& systems,
                         int delta) {
  if (mode == Mode::kAb) {
    state_.pair_counts[pair_key(systems)] += delta;
  } else {
    state_.system_counts[systems.at(0)] += delta;
  }
}

void Study::expire_locked() {
  const auto now = clock_();
  for (auto it = pending_.begin(); it != pending_.end();) {
    const Trial& t = it->second;
    if (now - t.issued < config_.trial_timeout) {
      ++it;
      continue;
    }
    state_.seen[t.participant].erase(
        combination_key(t.mode, t.doc_id, t.systems));
    count_locked(t.mode, t.systems, -1);
    it = pending_.erase(it);
  }
}

std::vector<Study::Candidate> Study::candidates_locked(
    const std::string& participant, Mode mode) const {
  std::vector<Candidate> out;
  auto seen_it = state_.seen.find(participant);
  auto unseen = [&](const std::string& key) {
    return seen_it == state_.seen.end() || !seen_it->second.count(key);
  };
  auto count_of = [](const std::map<std::string, std::size_t>& counts,
                     const std::string& key) -> std::size_t {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  };
  const auto& sys = config_.systems;
  for (const std::string& doc : config_.documents) {
    if (mode == Mode::kLikert) {
      for (const std::string& s : sys) {
        std::string key = combination_key(mode, doc, {s});
        if (!unseen(key)) continue;
        const double w = 1.0 / (1.0 + count_of(state_.system_counts, s));
        out.push_back({doc, {s}, std::move(key), w});
      }
      continue;
    }
    for (std::size_t a = 0; a < sys.size(); ++a) {
      for (std::size_t b = a + 1; b < sys.size(); ++b) {
        std::string key = combination_key(mode, doc, {sys[a], sys[b]});
        if (!unseen(key)) continue;
        const double w =
            1.0 / (1.0 + count_of(state_.pair_counts, pair_key({sys[a], sys[b]})));
        out.push_back({doc, {sys[a], sys[b]}, std::move(key), w});
      }
    }
  }
  return out;
}

std::vector<std::pair<std::vector<std::string>, double>>
Study::candidate_weights(const std::string& participant, Mode mode) {
  std::lock_guard<std::mutex> lock(mu_);
  expire_locked();
  std::vector<std::pair<std::vector<std::string>, double>> out;
  for (Candidate& c : candidates_locked(participant, mode)) {
    std::vector<std::string> id{c.doc_id};
    id.insert(id.end(), c.systems.begin(), c.systems.end());
    out.emplace_back(std::move(id), c.weight);
  }
  return out;
}

std::string Study::new_trial_id_locked() {
  static const char kHex[] = "0123456789abcdef";
  for (;;) {
    std::uint64_t x = rng_.next();
    std::string id = "t-";
    for (int i = 0; i < 16; ++i) {
      id.push_back(kHex[x & 0xF]);
      x >>= 4;
    }
    if (!pending_.count(id) && !store_.contains(id)) return id;
  }
}

std::optional<Trial> Study::next_trial(const std::string& participant,
                                       Mode mode) {
  if (participant.empty()) throw ValidationError("empty participant id");
  std::lock_guard<std::mutex> lock(mu_);
  expire_locked();
  const std::vector<Candidate> candidates =
      candidates_locked(participant, mode);
  if (candidates.empty()) return std::nullopt;
  if (mode == Mode::kAb && config_.systems.size() < 2) return std::nullopt;

  double total = 0.0;
  for (const Candidate& c : candidates) total += c.weight;
  const double target = rng_.uniform() * total;
  std::size_t pick = candidates.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    acc += candidates[i].weight;
    if (target < acc) {
      pick = i;
      break;
    }
  }
  const Candidate& chosen = candidates[pick];

  Trial trial;
  trial.trial_id = new_trial_id_locked();
  trial.participant = participant;
  trial.mode = mode;
  trial.doc_id = chosen.doc_id;
  trial.systems = chosen.systems;
  if (mode == Mode::kAb && rng_.below(2) == 1) {
    std::swap(trial.systems[0], trial.systems[1]);
  }
  trial.issued = clock_();
  state_.seen[participant].insert(chosen.key);
  count_locked(mode, trial.systems, +1);
  pending_[trial.trial_id] = trial;
  return trial;
}

Judgment Study::record(const std::string& trial_id,
                       const std::string& participant, const json& response) {
  std::lock_guard<std::mutex> lock(mu_);
  expire_locked();
  auto it = pending_.find(trial_id);
  if (it == pending_.end()) {
    if (store_.contains(trial_id)) {
      throw DuplicateTrialError("trial '" + trial_id +
                                "' was already answered");
    }
    throw UnknownTrialError("trial '" + trial_id +
                            "' was not issued or has expired");
  }
  const Trial& trial = it->second;
  if (!participant.empty() && participant != trial.participant) {
    throw ValidationError("trial '" + trial_id +
                          "' was issued to another participant");
  }
  Judgment j;
  j.trial_id = trial.trial_id;
  j.participant = trial.participant;
  j.mode = trial.mode;
  j.doc_id = trial.doc_id;
  j.systems = trial.systems;
  j.response = parse_response(trial.mode, response);
  j.timestamp_ms = to_ms(clock_());
  store_.append(j);
  pending_.erase(it);
  return j;
}

std::vector<Judgment> Study::judgments() const {
  std::lock_guard<std::mutex> lock(mu_);
  return store_.judgments();
}

SamplerState Study::state() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_;
}

std::size_t Study::in_flight() const {
  std::lock_guard<std::mutex> lock(mu_);
  return pending_.size();
}

}  // namespace paraseg
