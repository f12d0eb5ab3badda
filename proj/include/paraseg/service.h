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

// HTTP front end of a human-evaluation study.
//
//   GET  /api/trial?participant=P&mode=ab|likert
//        200 {"trial_id", "mode", "doc_id", "sides": [{"label": "A",
//             "text"}, {"label": "B", "text"}], "response_schema"}
//            (likert: "document": {"text"} instead of "sides")
//        204 when the participant has seen every combination
//   POST /api/judgment {"trial_id", "participant", "response"}
//        200 {"ok": true, "trial_id"}; 404 unknown or expired trial,
//        409 already answered, 400 invalid body
//   GET  /api/results/elo     ELO table over ab judgments
//   GET  /api/results/likert  per-system Likert summary
//
// Payloads never carry system ids. Errors are {"error": message}.

#ifndef PARASEG_SERVICE_H_
#define PARASEG_SERVICE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "paraseg/humaneval.h"
#include "paraseg/ingest.h"
#include "paraseg/types.h"

namespace httplib {
class Server;
}

namespace paraseg {

// Segmentations under study: system id -> doc id -> labels.
using SystemOutputs = std::map<std::string, std::map<std::string, BoundaryLabels>>;

struct StudyMaterials {
  std::vector<DatasetRecord> documents;
  SystemOutputs systems;
};

// Reads the dataset and a systems manifest {"system": "labels.jsonl", ...}
// (relative paths resolve against the manifest's directory). Every system
// must cover every document with labels of the right length.
StudyMaterials load_study_materials(const std::string& documents_path,
                                    const std::string& systems_manifest_path);

// Throws ValidationError on missing or mismatched segmentations.
void validate(const StudyMaterials& materials);

struct HttpReply {
  int status = 200;
  nlohmann::json body;  // null for an empty body
};

class AnnotationService {
 public:
  AnnotationService(StudyMaterials materials, Study& study,
                    std::string cors_origin = "*");

  HttpReply get_trial(const std::string& participant,
                      const std::string& mode);
  HttpReply post_judgment(const std::string& body);
  HttpReply elo_results() const;
  HttpReply likert_results() const;

  // Blinded payload for an issued trial.
  nlohmann::json trial_payload(const Trial& trial) const;

  // Registers the routes (and CORS handling) on `server`.
  void mount(httplib::Server& server);

 private:
  std::string render(const std::string& system,
                     const std::string& doc_id) const;

  StudyMaterials materials_;
  std::map<std::string, std::vector<std::string>> sentences_;
  Study& study_;
  std::string cors_origin_;
};

// StudyConfig matching the materials: dataset order for documents, sorted
// system ids.
StudyConfig study_config(const StudyMaterials& materials, std::uint64_t seed,
                         std::chrono::seconds trial_timeout);

}  // namespace paraseg

#endif  // PARASEG_SERVICE_H_
