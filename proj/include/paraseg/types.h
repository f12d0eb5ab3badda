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

// Shared data model: transcripts, sentences and boundary labels.
//
// Boundary position i (0-based) is the gap between sentence i and sentence
// i + 1, so a transcript of m sentences has m - 1 boundaries. Every module
// uses this convention.

#ifndef PARASEG_TYPES_H_
#define PARASEG_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paraseg {

enum class Label : std::uint8_t { kNone = 0, kPara = 1, kChap = 2 };

enum class Level : std::uint8_t { kParagraph, kChapter, kHierarchical };

std::string_view level_name(Level level);
// Throws ValidationError on unknown names.
Level parse_level(std::string_view name);

// Whether `label` counts as a break when the segmentation is viewed at
// `level`. At paragraph level a chapter break is also a paragraph break.
bool is_break(Label label, Level level);

struct Sentence {
  std::string text;
  std::size_t index = 0;
  // Terminal punctuation cluster ending `text` (".", "?\"", "...", ...).
  std::optional<std::string> final_punct;
};

struct Transcript {
  std::string id;
  std::string text;
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
};

// Builds a transcript from pre-tokenized sentences. `text` becomes the
// single-space join, and final punctuation is detected from each sentence.
Transcript make_transcript(std::string id,
                           const std::vector<std::string>& sentences);

// Checks the Transcript and Sentence invariants; throws ValidationError.
void validate(const Transcript& transcript);

struct BoundaryLabels {
  std::string doc_id;
  Level level = Level::kParagraph;
  std::vector<Label> labels;

  std::size_t sentence_count() const { return labels.size() + 1; }
  std::size_t break_count(Level view) const;
  // Boundary positions that are breaks when viewed at `view`.
  std::vector<std::size_t> break_positions(Level view) const;

  friend bool operator==(const BoundaryLabels&, const BoundaryLabels&) =
      default;
};

// Builds binary labels of the given level from break positions.
BoundaryLabels labels_from_breaks(std::string doc_id, Level level,
                                  std::size_t sentence_count,
                                  const std::vector<std::size_t>& breaks);

// Throws ValidationError if labels of `labels.level` contain a label that
// does not belong to that level.
void validate(const BoundaryLabels& labels);

// Half-open sentence range.
struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const SentenceRange&, const SentenceRange&) = default;
};

struct ChapterSpan {
  std::optional<std::string> title;
  SentenceRange range;
};

struct SegmentedDocument {
  Transcript transcript;
  std::optional<BoundaryLabels> gold;
  std::optional<std::vector<ChapterSpan>> chapters;
};

void validate(const SegmentedDocument& doc);

// Segment lengths (in sentences) of the segmentation seen at `level`.
// Asking for the chapter view of paragraph labels (or the reverse) is a
// ContractError since that level is absent from the labels.
std::vector<std::size_t> labels_to_masses(const BoundaryLabels& labels,
                                          Level level);

// Inverse of labels_to_masses for binary levels.
BoundaryLabels masses_to_labels(std::string doc_id,
                                const std::vector<std::size_t>& masses,
                                Level level);

// Binary view of hierarchical labels. Chapter keeps CHAP only; paragraph
// maps both PARA and CHAP to PARA.
BoundaryLabels project_hierarchical(const BoundaryLabels& labels,
                                    Level target_level);

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

}  // namespace paraseg

#endif  // PARASEG_TYPES_H_
