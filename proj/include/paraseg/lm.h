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

// Language-model client contract.
//
// Wire protocol (JSON over HTTP POST):
//
//   <base>/score     {"messages": [{"role": ..., "content": ...}, ...],
//                     "candidates": ["." , ".\n\n"],
//                     "context": {"doc_id": ..., "boundary": 3}}
//                 -> {"scores": {".": -0.7, ".\n\n": -0.9}}
//
//   <base>/generate  {"messages": [...], "max_tokens": 4096,
//                     "context": {"doc_id": ...}}
//                 -> {"text": "..."}
//
// Scores are log-probabilities of the whole candidate string continuing the
// last (assistant) message. The first candidate is always the "continue"
// option. "context" is informational; servers may ignore it. A 413 status
// (or an error body with code "context_length_exceeded") means the prompt
// does not fit the model.

#ifndef PARASEG_LM_H_
#define PARASEG_LM_H_

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "paraseg/error.h"

namespace paraseg {

struct Message {
  std::string role;
  std::string content;

  friend bool operator==(const Message&, const Message&) = default;
};

struct LmScoreRequest {
  std::vector<Message> messages;
  std::vector<std::string> candidates;
  std::string doc_id;
  std::optional<std::size_t> boundary;
};

struct LmScoreResponse {
  std::map<std::string, double> scores;
};

struct LmGenerateRequest {
  std::vector<Message> messages;
  std::size_t max_tokens = 4096;
  std::string doc_id;
};

nlohmann::json to_json(const LmScoreRequest& request);
LmScoreRequest score_request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LmGenerateRequest& request);
LmGenerateRequest generate_request_from_json(const nlohmann::json& j);

// Parses a score response and checks it against `request`: every candidate
// scored, every score a finite log-probability (<= 0). Throws
// LmProtocolError.
LmScoreResponse parse_score_response(const nlohmann::json& j,
                                     const LmScoreRequest& request);
void check_score_response(const LmScoreResponse& response,
                          const LmScoreRequest& request);

// Network-level failure; worth retrying.
class LmTransportError : public Error {
 public:
  using Error::Error;
};

// The server answered with something that violates the protocol.
class LmProtocolError : public Error {
 public:
  using Error::Error;
};

// Prompt exceeds the model context. Never retried and never truncated.
class ContextLengthError : public Error {
 public:
  using Error::Error;
};

// Implementations must be safe to call from several threads at once.
class LmClient {
 public:
  virtual ~LmClient() = default;
  virtual LmScoreResponse score(const LmScoreRequest& request) = 0;
  virtual std::string generate(const LmGenerateRequest& request) = 0;
};

class HttpLmClient : public LmClient {
 public:
  // `base_url` like "http://localhost:8081" or "http://host:8081/v1".
  explicit HttpLmClient(std::string base_url,
                        std::chrono::seconds timeout = std::chrono::seconds(120));

  LmScoreResponse score(const LmScoreRequest& request) override;
  std::string generate(const LmGenerateRequest& request) override;

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

  std::string host_;  // scheme://host:port
  std::string prefix_;
  std::chrono::seconds timeout_;
};

// Adapts plain callables; used by tests and the Python bindings.
class FunctionLm : public LmClient {
 public:
  using ScoreFn = std::function<LmScoreResponse(const LmScoreRequest&)>;
  using GenerateFn = std::function<std::string(const LmGenerateRequest&)>;

  explicit FunctionLm(ScoreFn score, GenerateFn generate = nullptr)
      : score_(std::move(score)), generate_(std::move(generate)) {}

  LmScoreResponse score(const LmScoreRequest& request) override;
  std::string generate(const LmGenerateRequest& request) override;

 private:
  ScoreFn score_;
  GenerateFn generate_;
};

// Scripted mock driven by a policy document:
//
//   {"default": "continue",
//    "boundaries": {"1": "break", "4": {"continue": -1.0, "break": -0.5}},
//    "documents": {"talk-7": {"default": "break", "boundaries": {...}}},
//    "generate": {"talk-7": "formatted text ..."}}
//
// A decision is "continue", "break", or an explicit score pair. Document
// entries override the top-level ones; boundaries override defaults.
class ScriptedLm : public LmClient {
 public:
  explicit ScriptedLm(nlohmann::json policy);
  static std::unique_ptr<ScriptedLm> load(const std::string& path);

  LmScoreResponse score(const LmScoreRequest& request) override;
  std::string generate(const LmGenerateRequest& request) override;

  std::size_t score_calls() const { return score_calls_.load(); }

 private:
  struct ScorePair {
    double keep;
    double split;
  };
  ScorePair lookup(const std::string& doc_id,
                   std::optional<std::size_t> boundary) const;

  nlohmann::json policy_;
  std::atomic<std::size_t> score_calls_{0};
};

// Wraps another client and counts score calls.
class CountingLm : public LmClient {
 public:
  explicit CountingLm(LmClient& inner) : inner_(inner) {}

  LmScoreResponse score(const LmScoreRequest& request) override {
    ++score_calls_;
    return inner_.score(request);
  }
  std::string generate(const LmGenerateRequest& request) override {
    ++generate_calls_;
    return inner_.generate(request);
  }

  std::size_t score_calls() const { return score_calls_.load(); }
  std::size_t generate_calls() const { return generate_calls_.load(); }

 private:
  LmClient& inner_;
  std::atomic<std::size_t> score_calls_{0};
  std::atomic<std::size_t> generate_calls_{0};
};

}  // namespace paraseg

#endif  // PARASEG_LM_H_
