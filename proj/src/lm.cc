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

#include "paraseg/lm.h"

#include <cmath>

#include "httplib.h"
#include "paraseg/ingest.h"

namespace paraseg {

using nlohmann::json;

namespace {

// Log-probabilities the mock reports for a scripted decision.
constexpr double kPreferred = -0.1;
constexpr double kRejected = -2.0;

json messages_to_json(const std::vector<Message>& messages) {
  json out = json::array();
  for (const Message& m : messages) {
    out.push_back({{"role", m.role}, {"content", m.content}});
  }
  return out;
}

std::vector<Message> messages_from_json(const json& j) {
  std::vector<Message> out;
  for (const json& m : j.at("messages")) {
    out.push_back({m.at("role").get<std::string>(),
                   m.at("content").get<std::string>()});
  }
  return out;
}

}  // namespace

json to_json(const LmScoreRequest& request) {
  json context = {{"doc_id", request.doc_id}};
  if (request.boundary) context["boundary"] = *request.boundary;
  return {{"messages", messages_to_json(request.messages)},
          {"candidates", request.candidates},
          {"context", std::move(context)}};
}

LmScoreRequest score_request_from_json(const json& j) {
  LmScoreRequest r;
  r.messages = messages_from_json(j);
  r.candidates = j.at("candidates").get<std::vector<std::string>>();
  if (j.contains("context")) {
    const json& c = j.at("context");
    r.doc_id = c.value("doc_id", "");
    if (c.contains("boundary") && c.at("boundary").is_number_unsigned()) {
      r.boundary = c.at("boundary").get<std::size_t>();
    }
  }
  return r;
}

json to_json(const LmGenerateRequest& request) {
  return {{"messages", messages_to_json(request.messages)},
          {"max_tokens", request.max_tokens},
          {"context", {{"doc_id", request.doc_id}}}};
}

LmGenerateRequest generate_request_from_json(const json& j) {
  LmGenerateRequest r;
  r.messages = messages_from_json(j);
  r.max_tokens = j.value("max_tokens", std::size_t{4096});
  if (j.contains("context")) r.doc_id = j.at("context").value("doc_id", "");
  return r;
}

void check_score_response(const LmScoreResponse& response,
                          const LmScoreRequest& request) {
  for (const std::string& c : request.candidates) {
    auto it = response.scores.find(c);
    if (it == response.scores.end()) {
      throw LmProtocolError("score response misses a requested candidate");
    }
    if (!std::isfinite(it->second) || it->second > 0.0) {
      throw LmProtocolError("candidate score is not a log-probability");
    }
  }
}

LmScoreResponse parse_score_response(const json& j,
                                     const LmScoreRequest& request) {
  LmScoreResponse out;
  try {
    for (auto it = j.at("scores").begin(); it != j.at("scores").end(); ++it) {
      out.scores[it.key()] = it.value().get<double>();
    }
  } catch (const json::exception& e) {
    throw LmProtocolError(std::string("malformed score response: ") +
                          e.what());
  }
  check_score_response(out, request);
  return out;
}

HttpLmClient::HttpLmClient(std::string base_url, std::chrono::seconds timeout)
    : timeout_(timeout) {
  const std::size_t scheme = base_url.find("://");
  const std::size_t path_start =
      base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    host_ = std::move(base_url);
  } else {
    host_ = base_url.substr(0, path_start);
    prefix_ = base_url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
  if (host_.empty()) throw ContractError("empty LM endpoint");
}

json HttpLmClient::post(const std::string& path, const json& body) {
  httplib::Client client(host_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  auto res = client.Post(prefix_ + path, body.dump(), "application/json");
  if (!res) {
    throw LmTransportError("LM request to " + host_ + prefix_ + path +
                           " failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 413 ||
      res->body.find("context_length_exceeded") != std::string::npos) {
    throw ContextLengthError("prompt exceeds the model context (" + host_ +
                             ")");
  }
  if (res->status >= 500 || res->status == 429 || res->status == 408) {
    throw LmTransportError("LM server returned status " +
                           std::to_string(res->status));
  }
  if (res->status != 200) {
    throw LmProtocolError("LM server rejected the request with status " +
                          std::to_string(res->status) + ": " + res->body);
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw LmProtocolError(std::string("LM response is not JSON: ") + e.what());
  }
}

LmScoreResponse HttpLmClient::score(const LmScoreRequest& request) {
  return parse_score_response(post("/score", to_json(request)), request);
}

std::string HttpLmClient::generate(const LmGenerateRequest& request) {
  const json j = post("/generate", to_json(request));
  if (!j.contains("text") || !j.at("text").is_string()) {
    throw LmProtocolError("generate response has no text");
  }
  return j.at("text").get<std::string>();
}

LmScoreResponse FunctionLm::score(const LmScoreRequest& request) {
  if (!score_) throw LmProtocolError("this LM does not score candidates");
  return score_(request);
}

std::string FunctionLm::generate(const LmGenerateRequest& request) {
  if (!generate_) throw LmProtocolError("this LM does not generate");
  return generate_(request);
}

ScriptedLm::ScriptedLm(json policy) : policy_(std::move(policy)) {
  if (!policy_.is_object()) {
    throw ValidationError("mock LM policy must be an object");
  }
}

std::unique_ptr<ScriptedLm> ScriptedLm::load(const std::string& path) {
  try {
    return std::make_unique<ScriptedLm>(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw ParseError("mock LM policy '" + path + "': " + e.what(), 0);
  }
}

ScriptedLm::ScorePair ScriptedLm::lookup(
    const std::string& doc_id, std::optional<std::size_t> boundary) const {
  auto decode = [](const json& d) -> ScorePair {
    if (d.is_string()) {
      const std::string s = d.get<std::string>();
      if (s == "break") return {kRejected, kPreferred};
      if (s == "continue") return {kPreferred, kRejected};
      throw ValidationError("unknown scripted decision '" + s + "'");
    }
    if (d.is_object()) {
      return {d.at("continue").get<double>(), d.at("break").get<double>()};
    }
    throw ValidationError("scripted decision must be a string or object");
  };
  auto find_in = [&](const json& scope) -> std::optional<ScorePair> {
    if (boundary && scope.contains("boundaries")) {
      const std::string key = std::to_string(*boundary);
      const json& b = scope.at("boundaries");
      if (b.contains(key)) return decode(b.at(key));
    }
    if (scope.contains("default")) return decode(scope.at("default"));
    return std::nullopt;
  };
  if (policy_.contains("documents") && policy_["documents"].contains(doc_id)) {
    if (auto p = find_in(policy_["documents"][doc_id])) return *p;
  }
  if (auto p = find_in(policy_)) return *p;
  return {kPreferred, kRejected};
}

LmScoreResponse ScriptedLm::score(const LmScoreRequest& request) {
  ++score_calls_;
  if (request.candidates.empty()) {
    throw LmProtocolError("score request without candidates");
  }
  const ScorePair pair = lookup(request.doc_id, request.boundary);
  LmScoreResponse out;
  out.scores[request.candidates[0]] = pair.keep;
  for (std::size_t i = 1; i < request.candidates.size(); ++i) {
    out.scores[request.candidates[i]] = pair.split;
  }
  return out;
}

std::string ScriptedLm::generate(const LmGenerateRequest& request) {
  if (policy_.contains("generate") &&
      policy_["generate"].contains(request.doc_id)) {
    return policy_["generate"][request.doc_id].get<std::string>();
  }
  throw LmProtocolError("no scripted generation for '" + request.doc_id +
                        "'");
}

}  // namespace paraseg
