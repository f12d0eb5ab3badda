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

// Human evaluation backend: judgments, their append-only store, the
// balanced trial sampler and ELO / Likert aggregation.

#ifndef PARASEG_HUMANEVAL_H_
#define PARASEG_HUMANEVAL_H_

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "paraseg/error.h"
#include "paraseg/rng.h"

namespace paraseg {

enum class Mode { kAb, kLikert };

std::string_view mode_name(Mode mode);
// Throws ValidationError for anything but "ab" and "likert".
Mode parse_mode(std::string_view name);

enum class Preference { kA, kB, kTie };

using Response = std::variant<Preference, int>;

struct Judgment {
  std::string trial_id;
  std::string participant;
  Mode mode = Mode::kAb;
  std::string doc_id;
  // Side order for ab: systems[0] was shown as A.
  std::vector<std::string> systems;
  Response response;
  std::int64_t timestamp_ms = 0;
};

// ab: two distinct systems and a preference; likert: one system and a
// rating in [1, 5]. Throws ValidationError.
void validate(const Judgment& judgment);
nlohmann::json to_json(const Judgment& judgment);
Judgment judgment_from_json(const nlohmann::json& j);
// Parses "A" / "B" / "TIE" (any case) or an integer rating, per mode.
Response parse_response(Mode mode, const nlohmann::json& value);

class UnknownTrialError : public Error {
 public:
  using Error::Error;
};

class DuplicateTrialError : public Error {
 public:
  using Error::Error;
};

// Append-only line-delimited judgment log. Each append is flushed and
// synced before returning. An empty path keeps judgments in memory only.
class JudgmentStore {
 public:
  explicit JudgmentStore(std::string path = {});
  ~JudgmentStore();
  JudgmentStore(const JudgmentStore&) = delete;
  JudgmentStore& operator=(const JudgmentStore&) = delete;

  // Throws DuplicateTrialError when the trial id is already stored.
  void append(const Judgment& judgment);
  bool contains(const std::string& trial_id) const;
  const std::vector<Judgment>& judgments() const { return judgments_; }

 private:
  std::string path_;
  std::FILE* file_ = nullptr;
  std::vector<Judgment> judgments_;
  std::set<std::string> trial_ids_;
};

struct EloState {
  double k = 32.0;
  double initial = 1000.0;
  std::map<std::string, double> ratings;
  std::map<std::string, std::size_t> games;
};

// Logistic expected score of a player rated `rating` against `opponent`.
double elo_expected(double rating, double opponent);

// Sequential ELO over ab judgments in (timestamp, trial_id) order. Throws
// ContractError if a likert judgment is passed.
EloState compute_elo(std::vector<Judgment> judgments, double k = 32.0,
                     double initial = 1000.0);

struct LikertSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation; 0 when n = 1
  std::size_t n = 0;
};

// Per-system summary of likert judgments. Throws ContractError when there
// are none.
std::map<std::string, LikertSummary> compute_likert(
    const std::vector<Judgment>& judgments);
// Throws ContractError when `system` has no likert judgment.
LikertSummary likert_for_system(const std::vector<Judgment>& judgments,
                                const std::string& system);

std::vector<Judgment> judgments_of_mode(const std::vector<Judgment>& all,
                                        Mode mode);

nlohmann::json elo_table(const EloState& state);
nlohmann::json likert_table(const std::map<std::string, LikertSummary>& table);

struct Trial {
  std::string trial_id;
  std::string participant;
  Mode mode = Mode::kAb;
  std::string doc_id;
  std::vector<std::string> systems;  // side order
  std::chrono::system_clock::time_point issued;
};

// Exposure bookkeeping for the sampler. A combination is (doc, system) in
// likert mode and (doc, unordered system pair) in ab mode.
struct SamplerState {
  std::map<std::string, std::set<std::string>> seen;  // participant -> keys
  std::map<std::string, std::size_t> system_counts;
  std::map<std::string, std::size_t> pair_counts;
};

struct StudyConfig {
  std::vector<std::string> documents;
  std::vector<std::string> systems;
  std::uint64_t seed = 0;
  std::chrono::seconds trial_timeout{1800};
};

// Trial issuing and judgment recording for one study. All members are safe
// to call concurrently; mutations are serialized internally.
class Study {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  // Replays `store` to rebuild sampler state.
  Study(StudyConfig config, JudgmentStore& store, Clock clock = nullptr);

  // Draws an unseen combination for `participant` with probability
  // proportional to 1 / (1 + exposure), randomizing ab side order.
  // nullopt when the participant has seen every combination.
  std::optional<Trial> next_trial(const std::string& participant, Mode mode);

  // Validates and durably stores the answer to an issued trial.
  Judgment record(const std::string& trial_id, const std::string& participant,
                  const nlohmann::json& response);

  // Inverse-frequency weights of every candidate combination.
  std::vector<std::pair<std::vector<std::string>, double>> candidate_weights(
      const std::string& participant, Mode mode);

  std::vector<Judgment> judgments() const;
  SamplerState state() const;
  std::size_t in_flight() const;
  const StudyConfig& config() const { return config_; }

 private:
  struct Candidate {
    std::string doc_id;
    std::vector<std::string> systems;
    std::string key;
    double weight;
  };
  std::vector<Candidate> candidates_locked(const std::string& participant,
                                           Mode mode) const;
  void expire_locked();
  void count_locked(Mode mode, const std::vector<std::string>& systems,
                    int delta);
  std::string new_trial_id_locked();

  StudyConfig config_;
  JudgmentStore& store_;
  Clock clock_;
  Rng rng_;
  SamplerState state_;
  std::map<std::string, Trial> pending_;
  mutable std::mutex mu_;
};

// Key of a combination as tracked in SamplerState::seen.
std::string combination_key(Mode mode, const std::string& doc_id,
                            std::vector<std::string> systems);

}  // namespace paraseg

#endif  // PARASEG_HUMANEVAL_H_
