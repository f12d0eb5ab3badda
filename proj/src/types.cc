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

#include "paraseg/types.h"

#include <string>

#include "paraseg/error.h"
#include "paraseg/senttok.h"

namespace paraseg {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kParagraph:
      return "paragraph";
    case Level::kChapter:
      return "chapter";
    case Level::kHierarchical:
      return "hierarchical";
  }
  return "unknown";
}

Level parse_level(std::string_view name) {
  if (name == "paragraph") return Level::kParagraph;
  if (name == "chapter") return Level::kChapter;
  if (name == "hierarchical") return Level::kHierarchical;
  throw ValidationError("unknown level '" + std::string(name) + "'");
}

bool is_break(Label label, Level level) {
  switch (level) {
    case Level::kParagraph:
      return label != Label::kNone;
    case Level::kChapter:
      return label == Label::kChap;
    case Level::kHierarchical:
      return label != Label::kNone;
  }
  return false;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Transcript make_transcript(std::string id,
                           const std::vector<std::string>& sentences) {
  Transcript t;
  t.id = std::move(id);
  t.sentences.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    Sentence s;
    s.text = sentences[i];
    s.index = i;
    s.final_punct = final_punctuation(s.text);
    if (i > 0) t.text.push_back(' ');
    t.text += s.text;
    t.sentences.push_back(std::move(s));
  }
  return t;
}

void validate(const Transcript& transcript) {
  std::string joined;
  for (std::size_t i = 0; i < transcript.sentences.size(); ++i) {
    const Sentence& s = transcript.sentences[i];
    if (s.index != i) {
      throw ValidationError("sentence index mismatch in '" + transcript.id +
                            "' at " + std::to_string(i));
    }
    if (s.text.empty()) {
      throw ValidationError("empty sentence in '" + transcript.id + "'");
    }
    if (s.text.find("\n\n") != std::string::npos) {
      throw ValidationError("sentence contains a paragraph delimiter in '" +
                            transcript.id + "'");
    }
    if (s.final_punct) {
      const std::string& p = *s.final_punct;
      if (p.empty() || s.text.size() < p.size() ||
          s.text.compare(s.text.size() - p.size(), p.size(), p) != 0) {
        throw ValidationError("final punctuation does not end sentence " +
                              std::to_string(i) + " in '" + transcript.id +
                              "'");
      }
    }
    if (i > 0) joined.push_back(' ');
    joined += s.text;
  }
  const std::string normalized = normalize_whitespace(transcript.text);
  if (normalize_whitespace(joined) != normalized) {
    throw ValidationError("sentences do not reproduce the text of '" +
                          transcript.id + "'");
  }
  if (!normalized.empty() && transcript.sentences.empty()) {
    throw ValidationError("non-empty transcript '" + transcript.id +
                          "' has no sentences");
  }
}

std::size_t BoundaryLabels::break_count(Level view) const {
  std::size_t n = 0;
  for (Label l : labels) n += is_break(l, view) ? 1 : 0;
  return n;
}

std::vector<std::size_t> BoundaryLabels::break_positions(Level view) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (is_break(labels[i], view)) out.push_back(i);
  }
  return out;
}

BoundaryLabels labels_from_breaks(std::string doc_id, Level level,
                                  std::size_t sentence_count,
                                  const std::vector<std::size_t>& breaks) {
  if (sentence_count == 0) {
    throw ContractError("labels need at least one sentence");
  }
  if (level == Level::kHierarchical) {
    throw ContractError("labels_from_breaks builds binary levels only");
  }
  BoundaryLabels out{std::move(doc_id), level,
                     std::vector<Label>(sentence_count - 1, Label::kNone)};
  const Label positive =
      level == Level::kChapter ? Label::kChap : Label::kPara;
  for (std::size_t b : breaks) {
    if (b >= out.labels.size()) {
      throw ContractError("break position " + std::to_string(b) +
                          " outside " + std::to_string(out.labels.size()) +
                          " boundaries");
    }
    out.labels[b] = positive;
  }
  return out;
}

void validate(const BoundaryLabels& labels) {
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    const Label l = labels.labels[i];
    const bool ok = l == Label::kNone ||
                    labels.level == Level::kHierarchical ||
                    (labels.level == Level::kParagraph && l == Label::kPara) ||
                    (labels.level == Level::kChapter && l == Label::kChap);
    if (!ok) {
      throw ValidationError("label at " + std::to_string(i) + " of '" +
                            labels.doc_id + "' does not belong to level " +
                            std::string(level_name(labels.level)));
    }
  }
}

void validate(const SegmentedDocument& doc) {
  validate(doc.transcript);
  const std::size_t m = doc.transcript.size();
  if (doc.gold) {
    validate(*doc.gold);
    if (m > 0 && doc.gold->sentence_count() != m) {
      throw ValidationError("gold labels of '" + doc.transcript.id +
                            "' do not match its sentence count");
    }
  }
  if (!doc.chapters) return;
  std::size_t expected = 0;
  for (const ChapterSpan& c : *doc.chapters) {
    if (c.range.begin != expected || c.range.end <= c.range.begin) {
      throw ValidationError("chapters of '" + doc.transcript.id +
                            "' are not contiguous and non-empty");
    }
    if (doc.gold && c.range.begin > 0 &&
        doc.gold->labels[c.range.begin - 1] == Label::kNone) {
      throw ValidationError("chapter start " + std::to_string(c.range.begin) +
                            " of '" + doc.transcript.id +
                            "' is not a gold break");
    }
    expected = c.range.end;
  }
  if (expected != m) {
    throw ValidationError("chapters of '" + doc.transcript.id +
                          "' do not cover all sentences");
  }
}

std::vector<std::size_t> labels_to_masses(const BoundaryLabels& labels,
                                          Level level) {
  const bool present =
      level == labels.level ||
      (labels.level == Level::kHierarchical && level != Level::kHierarchical);
  if (!present) {
    throw ContractError("level " + std::string(level_name(level)) +
                        " is absent from " +
                        std::string(level_name(labels.level)) + " labels");
  }
  std::vector<std::size_t> masses;
  std::size_t run = 1;
  for (Label l : labels.labels) {
    if (is_break(l, level)) {
      masses.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  masses.push_back(run);
  return masses;
}

BoundaryLabels masses_to_labels(std::string doc_id,
                                const std::vector<std::size_t>& masses,
                                Level level) {
  if (masses.empty()) throw ContractError("empty mass sequence");
  std::size_t total = 0;
  std::vector<std::size_t> breaks;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] == 0) throw ContractError("zero-length segment");
    total += masses[i];
    if (i + 1 < masses.size()) breaks.push_back(total - 1);
  }
  return labels_from_breaks(std::move(doc_id), level, total, breaks);
}

BoundaryLabels project_hierarchical(const BoundaryLabels& labels,
                                    Level target_level) {
  if (labels.level != Level::kHierarchical) {
    throw ContractError("projection requires hierarchical labels");
  }
  if (target_level == Level::kHierarchical) return labels;
  BoundaryLabels out{labels.doc_id, target_level, {}};
  out.labels.reserve(labels.labels.size());
  const Label positive =
      target_level == Level::kChapter ? Label::kChap : Label::kPara;
  for (Label l : labels.labels) {
    out.labels.push_back(is_break(l, target_level) ? positive : Label::kNone);
  }
  return out;
}

}  // namespace paraseg
