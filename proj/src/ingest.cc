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

#include "paraseg/ingest.h"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "paraseg/error.h"

namespace paraseg {

using nlohmann::json;

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Splits raw text into paragraph chunks at whitespace runs holding two or
// more newlines.
std::vector<std::string_view> split_paragraphs(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    int newlines = 0;
    while (j < text.size() && is_space(text[j])) {
      newlines += text[j] == '\n' ? 1 : 0;
      ++j;
    }
    if (newlines >= 2) {
      out.push_back(text.substr(start, i - start));
      start = j;
    }
    i = j;
  }
  out.push_back(text.substr(start));
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void check_written(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key +
                          "' has the wrong type");
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buf.str();
}

std::size_t DatasetRecord::sentence_count() const {
  std::size_t n = 0;
  for (const auto& c : chapters) {
    for (const auto& p : c.paragraphs) n += p.size();
  }
  return n;
}

std::size_t DatasetRecord::paragraph_count() const {
  std::size_t n = 0;
  for (const auto& c : chapters) n += c.paragraphs.size();
  return n;
}

std::vector<std::string> DatasetRecord::sentences() const {
  std::vector<std::string> out;
  out.reserve(sentence_count());
  for (const auto& c : chapters) {
    for (const auto& p : c.paragraphs) out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void validate(const DatasetRecord& record) {
  if (record.chapters.empty()) {
    throw ValidationError("record '" + record.id + "' has no chapters");
  }
  for (std::size_t c = 0; c < record.chapters.size(); ++c) {
    const Chapter& chapter = record.chapters[c];
    if (chapter.paragraphs.empty()) {
      throw ValidationError("record '" + record.id + "' chapter " +
                            std::to_string(c) + " has no paragraphs");
    }
    for (std::size_t p = 0; p < chapter.paragraphs.size(); ++p) {
      if (chapter.paragraphs[p].empty()) {
        throw ValidationError("record '" + record.id + "' chapter " +
                              std::to_string(c) + " paragraph " +
                              std::to_string(p) + " is empty");
      }
      for (const std::string& s : chapter.paragraphs[p]) {
        if (normalize_whitespace(s).empty()) {
          throw ValidationError("record '" + record.id +
                                "' contains an empty sentence");
        }
      }
    }
  }
}

DatasetRecord parse_plain_text(std::string_view text, std::string id,
                               const SentenceTokenizer& tokenizer) {
  DatasetRecord record;
  record.id = std::move(id);
  Chapter chapter;
  for (std::string_view chunk : split_paragraphs(text)) {
    Paragraph paragraph = tokenizer.split(chunk);
    if (!paragraph.empty()) chapter.paragraphs.push_back(std::move(paragraph));
  }
  if (chapter.paragraphs.empty()) {
    throw ValidationError("empty document" +
                          (record.id.empty() ? "" : " '" + record.id + "'"));
  }
  record.chapters.push_back(std::move(chapter));
  return record;
}

std::string render_plain_text(const DatasetRecord& record) {
  std::string out;
  bool first_paragraph = true;
  for (const Chapter& c : record.chapters) {
    for (const Paragraph& p : c.paragraphs) {
      if (!first_paragraph) out += "\n\n";
      first_paragraph = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += p[i];
      }
    }
  }
  return out;
}

std::string render_with_breaks(const std::vector<std::string>& sentences,
                               const BoundaryLabels& labels, Level level) {
  if (sentences.empty() || labels.sentence_count() != sentences.size()) {
    throw ContractError("labels of '" + labels.doc_id +
                        "' do not match the sentence count");
  }
  std::string out = sentences[0];
  for (std::size_t i = 1; i < sentences.size(); ++i) {
    out += is_break(labels.labels[i - 1], level) ? "\n\n" : " ";
    out += sentences[i];
  }
  return out;
}

BoundaryLabels gold_labels(const DatasetRecord& record) {
  BoundaryLabels out{record.id, Level::kHierarchical, {}};
  bool first = true;
  for (const Chapter& c : record.chapters) {
    bool chapter_start = true;
    for (const Paragraph& p : c.paragraphs) {
      for (std::size_t s = 0; s < p.size(); ++s) {
        if (first) {
          first = false;
        } else if (s > 0) {
          out.labels.push_back(Label::kNone);
        } else {
          out.labels.push_back(chapter_start ? Label::kChap : Label::kPara);
        }
        chapter_start = false;
      }
    }
  }
  return out;
}

Transcript record_transcript(const DatasetRecord& record) {
  return make_transcript(record.id, record.sentences());
}

SegmentedDocument record_document(const DatasetRecord& record) {
  SegmentedDocument doc;
  doc.transcript = record_transcript(record);
  doc.gold = gold_labels(record);
  std::vector<ChapterSpan> spans;
  std::size_t begin = 0;
  for (const Chapter& c : record.chapters) {
    std::size_t n = 0;
    for (const Paragraph& p : c.paragraphs) n += p.size();
    spans.push_back({c.title, {begin, begin + n}});
    begin += n;
  }
  doc.chapters = std::move(spans);
  return doc;
}

DatasetRecord record_from_labels(const std::string& id,
                                 const std::vector<std::string>& sentences,
                                 const BoundaryLabels& labels) {
  if (sentences.empty() || labels.sentence_count() != sentences.size()) {
    throw ContractError("labels of '" + id +
                        "' do not match the sentence count");
  }
  DatasetRecord record;
  record.id = id;
  record.chapters.push_back(Chapter{std::nullopt, {{sentences[0]}}});
  for (std::size_t i = 1; i < sentences.size(); ++i) {
    const Label l = labels.labels[i - 1];
    if (l == Label::kChap) {
      record.chapters.push_back(Chapter{std::nullopt, {{}}});
    } else if (l == Label::kPara) {
      record.chapters.back().paragraphs.emplace_back();
    }
    record.chapters.back().paragraphs.back().push_back(sentences[i]);
  }
  return record;
}

json to_json(const DatasetRecord& record) {
  json chapters = json::array();
  for (const Chapter& c : record.chapters) {
    json jc = {{"paragraphs", c.paragraphs}};
    if (c.title) jc["title"] = *c.title;
    chapters.push_back(std::move(jc));
  }
  return {{"id", record.id}, {"chapters", std::move(chapters)}};
}

DatasetRecord dataset_record_from_json(const json& j) {
  DatasetRecord record;
  record.id = require<std::string>(j, "id");
  const json& chapters = j.at("chapters");
  if (!chapters.is_array()) throw ValidationError("'chapters' is not a list");
  for (const json& jc : chapters) {
    Chapter c;
    if (jc.contains("title") && !jc.at("title").is_null()) {
      c.title = require<std::string>(jc, "title");
    }
    c.paragraphs = require<std::vector<Paragraph>>(jc, "paragraphs");
    record.chapters.push_back(std::move(c));
  }
  validate(record);
  return record;
}

void for_each_jsonl(
    std::istream& in,
    const std::function<void(const json&, std::size_t line)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": malformed JSON: " + e.what(),
                       line_no);
    }
    std::string id;
    if (j.is_object() && j.contains("id") && j["id"].is_string()) {
      id = j["id"].get<std::string>();
    }
    try {
      fn(j, line_no);
    } catch (const ParseError&) {
      throw;
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) +
                           (id.empty() ? "" : " (id '" + id + "')") + ": " +
                           e.what(),
                       line_no, id);
    } catch (const ValidationError& e) {
      throw ParseError("line " + std::to_string(line_no) +
                           (id.empty() ? "" : " (id '" + id + "')") + ": " +
                           e.what(),
                       line_no, id);
    }
  }
  if (in.bad()) throw IoError("read failure after line " +
                              std::to_string(line_no));
}

std::vector<DatasetRecord> read_jsonl_dataset(std::istream& in) {
  std::vector<DatasetRecord> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    out.push_back(dataset_record_from_json(j));
  });
  return out;
}

std::vector<DatasetRecord> read_jsonl_dataset(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_jsonl_dataset(in);
}

void write_jsonl_dataset(const std::vector<DatasetRecord>& records,
                         std::ostream& out) {
  for (const DatasetRecord& r : records) {
    validate(r);
    out << to_json(r).dump() << '\n';
  }
}

void write_jsonl_dataset(const std::vector<DatasetRecord>& records,
                         const std::string& path) {
  std::ofstream out = open_output(path);
  write_jsonl_dataset(records, out);
  check_written(out, path);
}

json labels_to_json(const BoundaryLabels& labels, const json& meta) {
  std::vector<int> values;
  values.reserve(labels.labels.size());
  for (Label l : labels.labels) values.push_back(static_cast<int>(l));
  json j = {{"id", labels.doc_id},
            {"level", std::string(level_name(labels.level))},
            {"labels", values}};
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

LabelsEntry labels_entry_from_json(const json& j) {
  LabelsEntry entry;
  entry.labels.doc_id = require<std::string>(j, "id");
  entry.labels.level = parse_level(require<std::string>(j, "level"));
  for (int v : require<std::vector<int>>(j, "labels")) {
    if (v < 0 || v > 2) {
      throw ValidationError("label value " + std::to_string(v) +
                            " is not 0, 1 or 2");
    }
    entry.labels.labels.push_back(static_cast<Label>(v));
  }
  validate(entry.labels);
  if (j.contains("meta")) entry.meta = j.at("meta");
  return entry;
}

std::vector<LabelsEntry> read_labels_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<LabelsEntry> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    out.push_back(labels_entry_from_json(j));
  });
  return out;
}

void write_labels_file(const std::vector<LabelsEntry>& entries,
                       const std::string& path) {
  std::ofstream out = open_output(path);
  for (const LabelsEntry& e : entries) {
    out << labels_to_json(e.labels, e.meta).dump() << '\n';
  }
  check_written(out, path);
}

void validate(const ScoreEntry& entry) {
  if (entry.level == Level::kHierarchical) {
    throw ValidationError("score file '" + entry.id +
                          "' must be paragraph or chapter level");
  }
  for (std::size_t i = 0; i < entry.scores.size(); ++i) {
    const double s = entry.scores[i];
    if (!(s >= 0.0 && s <= 1.0)) {
      throw ValidationError("score " + std::to_string(i) + " of '" +
                            entry.id + "' is outside [0, 1]");
    }
  }
}

void validate(const ScoreEntry& entry, std::size_t sentence_count) {
  validate(entry);
  if (sentence_count == 0 || entry.scores.size() != sentence_count - 1) {
    throw ValidationError("'" + entry.id + "' has " +
                          std::to_string(entry.scores.size()) +
                          " scores for " + std::to_string(sentence_count) +
                          " sentences");
  }
}

json to_json(const ScoreEntry& entry) {
  return {{"id", entry.id},
          {"level", std::string(level_name(entry.level))},
          {"scores", entry.scores}};
}

ScoreEntry score_entry_from_json(const json& j) {
  ScoreEntry entry;
  entry.id = require<std::string>(j, "id");
  entry.level = parse_level(require<std::string>(j, "level"));
  entry.scores = require<std::vector<double>>(j, "scores");
  validate(entry);
  return entry;
}

std::vector<ScoreEntry> read_score_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<ScoreEntry> out;
  for_each_jsonl(in, [&](const json& j, std::size_t) {
    out.push_back(score_entry_from_json(j));
  });
  return out;
}

void write_score_file(const std::vector<ScoreEntry>& entries,
                      const std::string& path) {
  std::ofstream out = open_output(path);
  for (const ScoreEntry& e : entries) out << to_json(e).dump() << '\n';
  check_written(out, path);
}

SplitManifest read_split_manifest(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("split manifest '" + path + "': " + e.what(), 0);
  }
  if (!j.is_object()) {
    throw ValidationError("split manifest must map partition names to ids");
  }
  SplitManifest manifest;
  for (auto it = j.begin(); it != j.end(); ++it) {
    try {
      manifest[it.key()] = it.value().get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw ValidationError("partition '" + it.key() +
                            "' is not a list of ids");
    }
  }
  return manifest;
}

void validate(const SplitManifest& manifest,
              const std::vector<std::string>& known_ids) {
  const std::set<std::string> known(known_ids.begin(), known_ids.end());
  std::map<std::string, std::string> owner;
  for (const auto& [partition, ids] : manifest) {
    for (const std::string& id : ids) {
      if (!known.count(id)) {
        throw ValidationError("partition '" + partition +
                              "' references unknown id '" + id + "'");
      }
      auto [it, inserted] = owner.emplace(id, partition);
      if (!inserted) {
        throw ValidationError("id '" + id + "' appears in both '" +
                              it->second + "' and '" + partition + "'");
      }
    }
  }
}

}  // namespace paraseg
