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

#include "paraseg/service.h"

#include <filesystem>

#include "httplib.h"

namespace paraseg {

using nlohmann::json;

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, json{{"error", message}}};
}

}  // namespace

StudyMaterials load_study_materials(const std::string& documents_path,
                                    const std::string& systems_manifest_path) {
  StudyMaterials m;
  m.documents = read_jsonl_dataset(documents_path);
  json manifest;
  try {
    manifest = json::parse(read_file(systems_manifest_path));
  } catch (const json::parse_error& e) {
    throw ParseError("systems manifest '" + systems_manifest_path +
                         "': " + e.what(),
                     0);
  }
  if (!manifest.is_object() || manifest.empty()) {
    throw ValidationError("systems manifest must map system ids to files");
  }
  const std::filesystem::path base =
      std::filesystem::path(systems_manifest_path).parent_path();
  for (auto it = manifest.begin(); it != manifest.end(); ++it) {
    if (!it.value().is_string()) {
      throw ValidationError("systems manifest entry '" + it.key() +
                            "' must be a path");
    }
    std::filesystem::path p = it.value().get<std::string>();
    if (p.is_relative()) p = base / p;
    auto& by_doc = m.systems[it.key()];
    for (LabelsEntry& e : read_labels_file(p.string())) {
      const std::string id = e.labels.doc_id;
      if (!by_doc.emplace(id, std::move(e.labels)).second) {
        throw ValidationError("system '" + it.key() +
                              "' has two segmentations of '" + id + "'");
      }
    }
  }
  validate(m);
  return m;
}

void validate(const StudyMaterials& m) {
  if (m.documents.empty()) throw ValidationError("study has no documents");
  if (m.systems.empty()) throw ValidationError("study has no systems");
  for (const auto& [system, by_doc] : m.systems) {
    for (const DatasetRecord& doc : m.documents) {
      auto it = by_doc.find(doc.id);
      if (it == by_doc.end()) {
        throw ValidationError("system '" + system + "' has no segmentation of '" +
                              doc.id + "'");
      }
      if (it->second.sentence_count() != doc.sentence_count()) {
        throw ValidationError("system '" + system + "' labels for '" + doc.id +
                              "' do not match its sentence count");
      }
    }
  }
}

StudyConfig study_config(const StudyMaterials& materials, std::uint64_t seed,
                         std::chrono::seconds trial_timeout) {
  StudyConfig c;
  for (const DatasetRecord& d : materials.documents) c.documents.push_back(d.id);
  for (const auto& [system, _] : materials.systems) c.systems.push_back(system);
  c.seed = seed;
  c.trial_timeout = trial_timeout;
  return c;
}

AnnotationService::AnnotationService(StudyMaterials materials, Study& study,
                                     std::string cors_origin)
    : materials_(std::move(materials)),
      study_(study),
      cors_origin_(std::move(cors_origin)) {
  validate(materials_);
  for (const DatasetRecord& d : materials_.documents) {
    sentences_[d.id] = d.sentences();
  }
}

std::string AnnotationService::render(const std::string& system,
                                      const std::string& doc_id) const {
  const BoundaryLabels& labels = materials_.systems.at(system).at(doc_id);
  return render_with_breaks(sentences_.at(doc_id), labels, Level::kParagraph);
}

json AnnotationService::trial_payload(const Trial& trial) const {
  json payload = {{"trial_id", trial.trial_id},
                  {"mode", mode_name(trial.mode)},
                  {"doc_id", trial.doc_id}};
  if (trial.mode == Mode::kAb) {
    payload["sides"] = json::array(
        {{{"label", "A"}, {"text", render(trial.systems[0], trial.doc_id)}},
         {{"label", "B"}, {"text", render(trial.systems[1], trial.doc_id)}}});
    payload["response_schema"] = {{"type", "choice"},
                                  {"options", {"A", "B", "TIE"}}};
  } else {
    payload["document"] = {{"text", render(trial.systems[0], trial.doc_id)}};
    payload["response_schema"] = {{"type", "rating"}, {"min", 1}, {"max", 5}};
  }
  return payload;
}

HttpReply AnnotationService::get_trial(const std::string& participant,
                                       const std::string& mode) {
  if (participant.empty()) return error_reply(400, "participant is required");
  Mode m;
  try {
    m = parse_mode(mode);
  } catch (const ValidationError& e) {
    return error_reply(400, e.what());
  }
  std::optional<Trial> trial = study_.next_trial(participant, m);
  if (!trial) return {204, nullptr};
  return {200, trial_payload(*trial)};
}

HttpReply AnnotationService::post_judgment(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error&) {
    return error_reply(400, "body is not JSON");
  }
  if (!j.is_object() || !j.contains("trial_id") ||
      !j["trial_id"].is_string() || !j.contains("response")) {
    return error_reply(400, "body needs trial_id and response");
  }
  std::string participant;
  if (j.contains("participant")) {
    if (!j["participant"].is_string()) {
      return error_reply(400, "participant must be a string");
    }
    participant = j["participant"].get<std::string>();
  }
  try {
    const Judgment judgment = study_.record(j["trial_id"].get<std::string>(),
                                            participant, j["response"]);
    return {200, json{{"ok", true}, {"trial_id", judgment.trial_id}}};
  } catch (const UnknownTrialError& e) {
    return error_reply(404, e.what());
  } catch (const DuplicateTrialError& e) {
    return error_reply(409, e.what());
  } catch (const ValidationError& e) {
    return error_reply(400, e.what());
  }
}

HttpReply AnnotationService::elo_results() const {
  const EloState state =
      compute_elo(judgments_of_mode(study_.judgments(), Mode::kAb));
  return {200, elo_table(state)};
}

HttpReply AnnotationService::likert_results() const {
  const std::vector<Judgment> likert =
      judgments_of_mode(study_.judgments(), Mode::kLikert);
  if (likert.empty()) return {200, json{{"systems", json::array()}}};
  return {200, likert_table(compute_likert(likert))};
}

void AnnotationService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    if (!reply.body.is_null()) {
      res.set_content(reply.body.dump(), "application/json");
    }
  };
  const std::string origin = cors_origin_;
  server.set_pre_routing_handler(
      [origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        return httplib::Server::HandlerResponse::Unhandled;
      });
  server.Options(R"(/api/.*)", [](const httplib::Request&,
                                  httplib::Response& res) { res.status = 204; });
  server.Get("/api/trial", [this, send](const httplib::Request& req,
                                        httplib::Response& res) {
    send(res, get_trial(req.get_param_value("participant"),
                        req.get_param_value("mode")));
  });
  server.Post("/api/judgment", [this, send](const httplib::Request& req,
                                            httplib::Response& res) {
    send(res, post_judgment(req.body));
  });
  server.Get("/api/results/elo",
             [this, send](const httplib::Request&, httplib::Response& res) {
               send(res, elo_results());
             });
  server.Get("/api/results/likert",
             [this, send](const httplib::Request&, httplib::Response& res) {
               send(res, likert_results());
             });
  server.set_exception_handler([send](const httplib::Request&,
                                      httplib::Response& res,
                                      std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send(res, error_reply(500, e.what()));
    }
  });
}

}  // namespace paraseg
