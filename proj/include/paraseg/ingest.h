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

// Readers and writers for the on-disk formats:
//
//   dataset    one JSON object per line:
//              {"id": ..., "chapters": [{"title": ..., "paragraphs":
//              [["sentence", ...], ...]}, ...]}
//   labels     {"id": ..., "level": "paragraph", "labels": [0, 1, ...]}
//              with 0 = none, 1 = paragraph, 2 = chapter; optional "meta"
//   scores     {"id": ..., "level": "paragraph", "scores": [0.1, ...]}
//   splits     {"train": [ids], "validation": [ids], ...}
//   plain text UTF-8, paragraphs separated by a blank line

#ifndef PARASEG_INGEST_H_
#define PARASEG_INGEST_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "paraseg/senttok.h"
#include "paraseg/types.h"

namespace paraseg {

using Paragraph = std::vector<std::string>;

struct Chapter {
  std::optional<std::string> title;
  std::vector<Paragraph> paragraphs;

  friend bool operator==(const Chapter&, const Chapter&) = default;
};

struct DatasetRecord {
  std::string id;
  std::vector<Chapter> chapters;

  std::size_t sentence_count() const;
  std::size_t paragraph_count() const;
  // All sentences in document order.
  std::vector<std::string> sentences() const;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

// Throws ValidationError when a chapter list, paragraph or sentence is empty.
void validate(const DatasetRecord& record);

// Splits on runs of two or more newlines, then into sentences.
// Throws ValidationError on input that is empty after trimming.
DatasetRecord parse_plain_text(std::string_view text, std::string id = {},
                               const SentenceTokenizer& tokenizer = {});

// Sentences joined by one space, paragraphs and chapters by "\n\n".
std::string render_plain_text(const DatasetRecord& record);

// Renders sentences with "\n\n" at every break of `labels` seen at `level`
// and single spaces elsewhere.
std::string render_with_breaks(const std::vector<std::string>& sentences,
                               const BoundaryLabels& labels,
                               Level level = Level::kParagraph);

// Hierarchical labels: CHAP at chapter starts, PARA at other paragraph
// starts.
BoundaryLabels gold_labels(const DatasetRecord& record);

Transcript record_transcript(const DatasetRecord& record);
// Transcript + hierarchical gold + chapter spans.
SegmentedDocument record_document(const DatasetRecord& record);

// Rebuilds a record from sentences and labels; CHAP starts a new chapter
// (untitled), PARA a new paragraph.
DatasetRecord record_from_labels(const std::string& id,
                                 const std::vector<std::string>& sentences,
                                 const BoundaryLabels& labels);

nlohmann::json to_json(const DatasetRecord& record);
DatasetRecord dataset_record_from_json(const nlohmann::json& j);

// Line-delimited readers. Blank lines are skipped; a malformed or invalid
// line throws ParseError carrying the 1-based line number (and the id when
// it can be recovered).
void for_each_jsonl(std::istream& in,
                    const std::function<void(const nlohmann::json&,
                                             std::size_t line)>& fn);

std::vector<DatasetRecord> read_jsonl_dataset(std::istream& in);
std::vector<DatasetRecord> read_jsonl_dataset(const std::string& path);
void write_jsonl_dataset(const std::vector<DatasetRecord>& records,
                         std::ostream& out);
void write_jsonl_dataset(const std::vector<DatasetRecord>& records,
                         const std::string& path);

struct LabelsEntry {
  BoundaryLabels labels;
  nlohmann::json meta;  // null when absent
};

nlohmann::json labels_to_json(const BoundaryLabels& labels,
                              const nlohmann::json& meta = nullptr);
LabelsEntry labels_entry_from_json(const nlohmann::json& j);
std::vector<LabelsEntry> read_labels_file(const std::string& path);
void write_labels_file(const std::vector<LabelsEntry>& entries,
                       const std::string& path);

struct ScoreEntry {
  std::string id;
  Level level = Level::kParagraph;
  std::vector<double> scores;
};

// Throws ValidationError for scores outside [0, 1] or non-binary levels.
void validate(const ScoreEntry& entry);
// Score count must equal the boundary count of the matching document.
void validate(const ScoreEntry& entry, std::size_t sentence_count);
nlohmann::json to_json(const ScoreEntry& entry);
ScoreEntry score_entry_from_json(const nlohmann::json& j);
std::vector<ScoreEntry> read_score_file(const std::string& path);
void write_score_file(const std::vector<ScoreEntry>& entries,
                      const std::string& path);

using SplitManifest = std::map<std::string, std::vector<std::string>>;

SplitManifest read_split_manifest(const std::string& path);
// Partitions must be disjoint and every id must be a known record id.
void validate(const SplitManifest& manifest,
              const std::vector<std::string>& known_ids);

// Reads a whole file; throws IoError.
std::string read_file(const std::string& path);

}  // namespace paraseg

#endif  // PARASEG_INGEST_H_
