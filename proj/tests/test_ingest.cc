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
#include <sstream>

#include "doctest.h"
#include "paraseg/error.h"
#include "paraseg/ingest.h"

using namespace paraseg;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("paraseg_ingest_" + name))
      .string();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream(path, std::ios::binary) << content;
}

std::vector<int> ints(const BoundaryLabels& b) {
  std::vector<int> out;
  for (Label l : b.labels) out.push_back(static_cast<int>(l));
  return out;
}

}  // namespace

TEST_CASE("parse_plain_text examples") {
  const DatasetRecord a = parse_plain_text("A. B.\n\nC.");
  REQUIRE(a.chapters.size() == 1);
  CHECK(a.chapters[0].paragraphs ==
        std::vector<Paragraph>{{"A.", "B."}, {"C."}});
  CHECK(parse_plain_text("A.").chapters[0].paragraphs ==
        std::vector<Paragraph>{{"A."}});
  CHECK(parse_plain_text("A.\n\n\n\nB.").chapters[0].paragraphs ==
        std::vector<Paragraph>{{"A."}, {"B."}});
  CHECK(parse_plain_text("A.\n \n\tB.").chapters[0].paragraphs.size() == 2);
  CHECK_THROWS_AS(parse_plain_text(" \n\n "), ValidationError);
  CHECK_THROWS_AS(parse_plain_text(""), ValidationError);
}

TEST_CASE("render and parse round trip") {
  for (const char* raw : {"A. B.\n\nC.", "A.", "A.\n\n\n\nB."}) {
    const DatasetRecord r = parse_plain_text(raw);
    const std::string text = render_plain_text(r);
    CHECK(parse_plain_text(text) == r);
    CHECK(render_plain_text(parse_plain_text(text)) == text);
  }
  CHECK(render_plain_text(parse_plain_text("A. B.\n\nC.")) == "A. B.\n\nC.");
  const DatasetRecord messy = parse_plain_text("  A.   B.\n\n\n C.  ");
  CHECK(render_plain_text(messy) == "A. B.\n\nC.");
}

TEST_CASE("gold_labels examples") {
  DatasetRecord one{"x", {Chapter{std::nullopt, {{"A.", "B."}, {"C."}}}}};
  CHECK(ints(gold_labels(one)) == std::vector<int>{0, 1});
  DatasetRecord two{"x", {Chapter{std::nullopt, {{"A."}}},
                          Chapter{std::string("t"), {{"B."}}}}};
  CHECK(ints(gold_labels(two)) == std::vector<int>{2});
  DatasetRecord flat{"x", {Chapter{std::nullopt, {{"A.", "B.", "C."}}}}};
  CHECK(ints(gold_labels(flat)) == std::vector<int>{0, 0});
  CHECK(gold_labels(flat).level == Level::kHierarchical);
}

TEST_CASE("record_from_labels inverts gold_labels") {
  DatasetRecord r{"x", {Chapter{std::nullopt, {{"A.", "B."}, {"C."}}},
                        Chapter{std::nullopt, {{"D."}, {"E.", "F."}}}}};
  CHECK(record_from_labels("x", r.sentences(), gold_labels(r)) == r);
  const SegmentedDocument doc = record_document(r);
  CHECK_NOTHROW(validate(doc));
  CHECK((*doc.chapters)[1].range == SentenceRange{3, 6});
}

TEST_CASE("render_with_breaks") {
  const BoundaryLabels l{"x", Level::kHierarchical,
                         {Label::kNone, Label::kChap, Label::kPara}};
  const std::vector<std::string> s = {"A.", "B.", "C.", "D."};
  CHECK(render_with_breaks(s, l) == "A. B.\n\nC.\n\nD.");
  CHECK(render_with_breaks(s, l, Level::kChapter) == "A. B.\n\nC. D.");
  CHECK_THROWS_AS(render_with_breaks({"A."}, l), ContractError);
}

TEST_CASE("jsonl dataset round trip") {
  const std::string line =
      R"({"chapters":[{"paragraphs":[["A.","B."],["C."]],"title":"Intro"}],"id":"t1"})";
  std::istringstream in(line + "\n");
  const auto records = read_jsonl_dataset(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].chapters[0].title == std::optional<std::string>("Intro"));
  std::ostringstream out;
  write_jsonl_dataset(records, out);
  CHECK(out.str() == line + "\n");

  std::istringstream empty("");
  CHECK(read_jsonl_dataset(empty).empty());
  std::istringstream blank("\n  \n");
  CHECK(read_jsonl_dataset(blank).empty());
}

TEST_CASE("jsonl errors carry line and id") {
  std::istringstream bad_json(
      "{\"id\":\"a\",\"chapters\":[{\"paragraphs\":[[\"A.\"]]}]}\n{oops\n");
  try {
    read_jsonl_dataset(bad_json);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream empty_para(
      "\n{\"id\":\"b\",\"chapters\":[{\"paragraphs\":[[\"A.\"],[]]}]}\n");
  try {
    read_jsonl_dataset(empty_para);
    FAIL("expected a validation error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.id() == "b");
  }
  std::istringstream empty_sentence(
      "{\"id\":\"c\",\"chapters\":[{\"paragraphs\":[[\"\"]]}]}\n");
  CHECK_THROWS_AS(read_jsonl_dataset(empty_sentence), ValidationError);
  std::istringstream no_chapters("{\"id\":\"c\",\"chapters\":[]}\n");
  CHECK_THROWS_AS(read_jsonl_dataset(no_chapters), ValidationError);
  CHECK_THROWS_AS(read_jsonl_dataset(std::string("/nonexistent/x.jsonl")),
                  IoError);
}

TEST_CASE("fixture corpus is canonical") {
  const std::string path = std::string(PARASEG_FIXTURE_DIR) + "/corpus.jsonl";
  const auto records = read_jsonl_dataset(path);
  CHECK(records.size() == 10);
  std::ostringstream out;
  write_jsonl_dataset(records, out);
  CHECK(out.str() == read_file(path));
}

TEST_CASE("labels files") {
  const std::string path = temp_path("labels.jsonl");
  BoundaryLabels l{"d", Level::kHierarchical,
                   {Label::kNone, Label::kChap, Label::kPara}};
  write_labels_file({{l, json{{"seed", 3}}}}, path);
  const auto back = read_labels_file(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].labels == l);
  CHECK(back[0].meta["seed"] == 3);
  write(path, R"({"id":"d","level":"paragraph","labels":[0,2]})" "\n");
  CHECK_THROWS_AS(read_labels_file(path), ValidationError);
  write(path, R"({"id":"d","level":"paragraph","labels":[0,7]})" "\n");
  CHECK_THROWS_AS(read_labels_file(path), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("score files") {
  ScoreEntry ok{"d", Level::kParagraph, {0.1, 0.9, 1.0, 0.0}};
  CHECK_NOTHROW(validate(ok));
  CHECK_NOTHROW(validate(ok, 5));
  CHECK_THROWS_AS(validate(ok, 4), ValidationError);
  ScoreEntry out_of_range{"d", Level::kParagraph, {1.5}};
  CHECK_THROWS_AS(validate(out_of_range), ValidationError);
  ScoreEntry hier{"d", Level::kHierarchical, {0.5}};
  CHECK_THROWS_AS(validate(hier), ValidationError);

  const std::string path = temp_path("scores.jsonl");
  write_score_file({ok}, path);
  const auto back = read_score_file(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].scores == ok.scores);
  write(path, R"({"id":"d","level":"chapter","scores":[0.2,-0.1]})" "\n");
  CHECK_THROWS_AS(read_score_file(path), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("split manifests") {
  const std::string path = temp_path("split.json");
  write(path, R"({"train":["a","b"],"val":["c"],"test":["d"]})");
  const SplitManifest m = read_split_manifest(path);
  CHECK(m.at("train").size() == 2);
  CHECK_NOTHROW(validate(m, {"a", "b", "c", "d"}));
  CHECK_THROWS_AS(validate(m, {"a", "b", "c"}), ValidationError);
  SplitManifest overlap = m;
  overlap["val"].push_back("a");
  CHECK_THROWS_AS(validate(overlap, {"a", "b", "c", "d"}), ValidationError);
  write(path, "[1,2]");
  CHECK_THROWS_AS(read_split_manifest(path), ValidationError);
  std::filesystem::remove(path);
}
