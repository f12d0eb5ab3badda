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

// Reference segmenters and post-processors.

#ifndef PARASEG_BASELINES_H_
#define PARASEG_BASELINES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paraseg/ingest.h"
#include "paraseg/types.h"

namespace paraseg {

// Fixed paragraph period n >= 1, in sentences.
class RulePeriod {
 public:
  explicit RulePeriod(std::size_t n);
  std::size_t value() const { return n_; }

 private:
  std::size_t n_;
};

// Break threshold in [0, 1]; a boundary is a break when score >= tau.
class Threshold {
 public:
  explicit Threshold(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// Whole-sentence paralinguistic cues such as "(Laughter)". Matching is
// case-insensitive and accepts a sentence made of one or more cues.
class CueLexicon {
 public:
  CueLexicon();
  // Every pattern must be fully parenthesized; throws ValidationError.
  explicit CueLexicon(const std::vector<std::string>& patterns);

  static CueLexicon load(const std::string& path);

  bool matches(std::string_view sentence) const;
  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  std::vector<std::string> patterns_;  // lowercased
};

// Exactly `breaks` distinct break positions drawn uniformly.
BoundaryLabels random_baseline(std::string doc_id, std::size_t sentence_count,
                               std::size_t breaks, std::uint64_t seed);

// Breaks after sentences n, 2n, ... strictly inside the document.
BoundaryLabels rule_baseline(std::string doc_id, std::size_t sentence_count,
                             RulePeriod period);

struct ParagraphLengthStats {
  double mean = 0.0;
  RulePeriod period{1};
};

// Mean sentences per paragraph over all paragraphs, rounded half up.
ParagraphLengthStats mean_paragraph_length(
    const std::vector<DatasetRecord>& corpus);
ParagraphLengthStats mean_paragraph_length(
    const std::vector<std::size_t>& paragraph_lengths);

// Paralinguistic break rule: isolates every run of cue sentences as its own
// paragraph by setting the boundaries around the run (document edges
// excepted). Existing breaks are kept; chapter breaks stay chapter breaks.
BoundaryLabels apply_pbr(const BoundaryLabels& labels,
                         const std::vector<std::string>& sentences,
                         const CueLexicon& lexicon = CueLexicon());

BoundaryLabels apply_threshold(const ScoreEntry& scores, Threshold tau);

struct ScoredDocument {
  ScoreEntry scores;
  BoundaryLabels gold;
};

struct TuningResult {
  Threshold tau{0.0};
  double f1 = 0.0;
  std::size_t candidates = 0;
};

// Exhaustive search over {0, 1} and every distinct score for the threshold
// maximizing the macro-averaged F1 of the corpus; ties go to the smallest
// threshold. Throws ContractError on an empty corpus.
TuningResult tune_threshold(const std::vector<ScoredDocument>& corpus);

// Macro F1 of the corpus at a fixed threshold.
double corpus_f1(const std::vector<ScoredDocument>& corpus, Threshold tau);

// Chapter seams drawn uniformly from the oracle chapter count, then every
// other boundary becomes a paragraph break with probability
// `paragraph_rate`.
BoundaryLabels hierarchical_random(std::string doc_id,
                                   std::size_t sentence_count,
                                   std::size_t chapter_count,
                                   double paragraph_rate, std::uint64_t seed);

// Share of within-chapter boundaries that are paragraph breaks.
double paragraph_break_rate(const std::vector<BoundaryLabels>& gold);

}  // namespace paraseg

#endif  // PARASEG_BASELINES_H_
