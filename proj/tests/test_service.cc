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
#include <thread>

#include "doctest.h"
#include "paraseg/error.h"
#include "httplib.h"
#include "paraseg/service.h"

using namespace paraseg;
using nlohmann::json;

namespace {

StudyMaterials materials() {
  StudyMaterials m;
  m.documents = {
      {"doc-1", {Chapter{std::nullopt, {{"One.", "Two.", "Three.", "Four."}}}}},
      {"doc-2", {Chapter{std::nullopt, {{"Five.", "Six.", "Seven."}}}}},
  };
  const std::map<std::string, std::vector<std::vector<std::size_t>>> breaks = {
      {"sys-alpha", {{0}, {}}},
      {"sys-beta", {{1}, {0}}},
      {"sys-gamma", {{0, 2}, {1}}},
  };
  for (const auto& [sys, per_doc] : breaks) {
    for (std::size_t d = 0; d < 2; ++d) {
      const DatasetRecord& doc = m.documents[d];
      m.systems[sys][doc.id] = labels_from_breaks(
          doc.id, Level::kParagraph, doc.sentence_count(), per_doc[d]);
    }
  }
  return m;
}

std::string temp_path(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("paraseg_svc_" + name);
  std::filesystem::remove(p);
  return p.string();
}

json answer(const std::string& trial_id, const json& response,
            const std::string& participant = "ann") {
  return {{"trial_id", trial_id}, {"response", response},
          {"participant", participant}};
}

// Runs one participant through every ab trial, answering A each time.
std::vector<json> complete_session(AnnotationService& svc) {
  std::vector<json> payloads;
  for (;;) {
    const HttpReply r = svc.get_trial("ann", "ab");
    if (r.status == 204) break;
    REQUIRE(r.status == 200);
    payloads.push_back(r.body);
    const HttpReply ok =
        svc.post_judgment(answer(r.body["trial_id"], "A").dump());
    REQUIRE(ok.status == 200);
  }
  return payloads;
}

}  // namespace

TEST_CASE("an annotation session covers every pair once") {
  JudgmentStore store;
  const StudyMaterials m = materials();
  Study study(study_config(m, 17, std::chrono::seconds(1800)), store);
  AnnotationService svc(m, study);

  const std::vector<json> payloads = complete_session(svc);
  CHECK(payloads.size() == 6);  // three pairs on two documents
  std::set<std::string> seen;
  for (const Judgment& j : study.judgments()) {
    std::vector<std::string> s = j.systems;
    std::sort(s.begin(), s.end());
    CHECK(seen.insert(j.doc_id + "|" + s[0] + "|" + s[1]).second);
  }
  CHECK(seen.size() == 6);

  // Payloads are blinded.
  for (const json& p : payloads) {
    const std::string dump = p.dump();
    CHECK(dump.find("sys-") == std::string::npos);
    CHECK(p["sides"].size() == 2);
    CHECK(p["sides"][0]["label"] == "A");
    CHECK(p["response_schema"]["options"] == json({"A", "B", "TIE"}));
  }

  const HttpReply elo = svc.elo_results();
  CHECK(elo.status == 200);
  const EloState expected = compute_elo(study.judgments());
  double sum = 0;
  for (const json& row : elo.body["systems"]) {
    CHECK(row["rating"].get<double>() ==
          expected.ratings.at(row["system"].get<std::string>()));
    CHECK(row["n"] == 4);
    sum += row["rating"].get<double>();
  }
  CHECK(sum == 3000.0);
}

TEST_CASE("likert trials render one document") {
  JudgmentStore store;
  const StudyMaterials m = materials();
  Study study(study_config(m, 3, std::chrono::seconds(1800)), store);
  AnnotationService svc(m, study);
  CHECK(svc.likert_results().body == json{{"systems", json::array()}});
  const HttpReply r = svc.get_trial("ann", "likert");
  REQUIRE(r.status == 200);
  CHECK(r.body.contains("document"));
  CHECK(r.body["response_schema"]["max"] == 5);
  CHECK(r.body.dump().find("sys-") == std::string::npos);
  CHECK(svc.post_judgment(answer(r.body["trial_id"], 7).dump()).status == 400);
  CHECK(svc.post_judgment(answer(r.body["trial_id"], 4).dump()).status == 200);
  const HttpReply table = svc.likert_results();
  REQUIRE(table.body["systems"].size() == 1);
  CHECK(table.body["systems"][0]["mean"] == 4.0);
}

TEST_CASE("request errors") {
  JudgmentStore store;
  const StudyMaterials m = materials();
  Study study(study_config(m, 3, std::chrono::seconds(1800)), store);
  AnnotationService svc(m, study);
  CHECK(svc.get_trial("", "ab").status == 400);
  CHECK(svc.get_trial("ann", "rank").status == 400);
  CHECK(svc.post_judgment("{").status == 400);
  CHECK(svc.post_judgment(R"({"trial_id":"x"})").status == 400);
  CHECK(svc.post_judgment(answer("t-0000000000000000", "A").dump()).status ==
        404);
  const HttpReply t = svc.get_trial("ann", "ab");
  const std::string id = t.body["trial_id"];
  CHECK(svc.post_judgment(answer(id, "A", "bob").dump()).status == 400);
  CHECK(svc.post_judgment(answer(id, "A").dump()).status == 200);
  CHECK(svc.post_judgment(answer(id, "A").dump()).status == 409);
}

TEST_CASE("materials are validated") {
  StudyMaterials m = materials();
  m.systems["sys-beta"].erase("doc-2");
  CHECK_THROWS_AS(validate(m), ValidationError);
  m = materials();
  m.systems["sys-beta"]["doc-2"].labels.push_back(Label::kNone);
  CHECK_THROWS_AS(validate(m), ValidationError);

  const std::string docs = temp_path("docs.jsonl");
  const std::string manifest = temp_path("systems.json");
  const std::string labels = temp_path("alpha.jsonl");
  m = materials();
  write_jsonl_dataset(m.documents, docs);
  std::vector<LabelsEntry> entries;
  for (const auto& [id, l] : m.systems["sys-alpha"]) entries.push_back({l, nullptr});
  write_labels_file(entries, labels);
  std::ofstream(manifest) << json{{"sys-alpha", std::filesystem::path(labels)
                                                    .filename()
                                                    .string()}}
                                 .dump();
  const StudyMaterials loaded = load_study_materials(docs, manifest);
  CHECK(loaded.systems.size() == 1);
  CHECK(loaded.systems.at("sys-alpha") == m.systems["sys-alpha"]);
  for (const auto& p : {docs, manifest, labels}) std::filesystem::remove(p);
}

TEST_CASE("restart replays judgments with identical results") {
  const std::string path = temp_path("store.jsonl");
  const StudyMaterials m = materials();
  json before;
  {
    JudgmentStore store(path);
    Study study(study_config(m, 9, std::chrono::seconds(1800)), store);
    AnnotationService svc(m, study);
    complete_session(svc);
    before = svc.elo_results().body;
  }
  JudgmentStore store(path);
  Study study(study_config(m, 9, std::chrono::seconds(1800)), store);
  AnnotationService svc(m, study);
  CHECK(svc.elo_results().body == before);
  CHECK(svc.get_trial("ann", "ab").status == 204);
  std::filesystem::remove(path);
}

TEST_CASE("routes over HTTP") {
  JudgmentStore store;
  const StudyMaterials m = materials();
  Study study(study_config(m, 5, std::chrono::seconds(1800)), store);
  AnnotationService svc(m, study, "http://localhost:5173");
  httplib::Server server;
  svc.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto trial = client.Get("/api/trial?participant=ann&mode=ab");
  REQUIRE(trial);
  CHECK(trial->status == 200);
  CHECK(trial->get_header_value("Access-Control-Allow-Origin") ==
        "http://localhost:5173");
  const json payload = json::parse(trial->body);
  auto post = client.Post("/api/judgment",
                          answer(payload["trial_id"], "TIE").dump(),
                          "application/json");
  REQUIRE(post);
  CHECK(post->status == 200);
  auto elo = client.Get("/api/results/elo");
  REQUIRE(elo);
  CHECK(json::parse(elo->body)["systems"].size() == 2);
  auto likert = client.Get("/api/results/likert");
  REQUIRE(likert);
  CHECK(likert->status == 200);
  auto preflight = client.Options("/api/judgment");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  auto bad = client.Get("/api/trial?mode=ab");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  server.stop();
  thread.join();
}
