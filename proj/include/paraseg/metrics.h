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

// Segmentation metrics: boundary F1, P_k and Boundary Similarity.
//
// P_k and Boundary Similarity work on mass sequences (segment lengths in
// sentences). Boundary F1 works on labels directly.

#ifndef PARASEG_METRICS_H_
#define PARASEG_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "paraseg/types.h"

namespace paraseg {

// P_k probe distance in sentences.
class PkWindow {
 public:
  explicit PkWindow(std::size_t k);
  std::size_t value() const { return k_; }

 private:
  std::size_t k_;
};

// Boundaries closer than n_t positions may be matched as a transposition.
class TranspositionWindow {
 public:
  static constexpr std::size_t kDefault = 2;
  explicit TranspositionWindow(std::size_t n_t = kDefault);
  std::size_t value() const { return n_t_; }

 private:
  std::size_t n_t_;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::string doc_id;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double pk = 0.0;
  double boundary_similarity = 0.0;
  // Window used for P_k; for corpus reports the mean over documents.
  double k = 0.0;
};

// Exact-position boundary F1 at `level`. An empty reference with an empty
// hypothesis scores 1 on every component.
PrecisionRecall boundary_f1(const BoundaryLabels& ref,
                            const BoundaryLabels& hyp,
                            Level level = Level::kParagraph);

// Half the mean reference segment length, rounded half up, at least 1.
PkWindow default_pk_window(const std::vector<std::size_t>& ref_masses);

// Fraction of probes (i, i + k), i in [0, L - k), on which reference and
// hypothesis disagree about same-segment membership. Throws ContractError
// when the total masses differ or L <= k.
double pk(const std::vector<std::size_t>& ref_masses,
          const std::vector<std::size_t>& hyp_masses,
          std::optional<PkWindow> k = std::nullopt);

// Edit operations between two boundary position sets.
struct BoundaryEdits {
  std::size_t matches = 0;
  // Offsets of transposed pairs.
  std::vector<std::size_t> transpositions;
  std::size_t additions = 0;  // additions and deletions together
};

BoundaryEdits boundary_edits(const std::vector<std::size_t>& ref_positions,
                             const std::vector<std::size_t>& hyp_positions,
                             TranspositionWindow n_t = TranspositionWindow());

// 1 - (A + w_t) / (A + T + M) with w_t = sum |offset| / n_t. Symmetric in
// its arguments; 1 when neither side has a boundary.
double boundary_similarity(const std::vector<std::size_t>& ref_masses,
                           const std::vector<std::size_t>& hyp_masses,
                           TranspositionWindow n_t = TranspositionWindow());

// Boundary offsets of a mass sequence (cumulative sums, last excluded).
std::vector<std::size_t> mass_boundaries(
    const std::vector<std::size_t>& masses);

// All three metrics for one document at `level`.
EvalReport evaluate(const BoundaryLabels& ref, const BoundaryLabels& hyp,
                    Level level = Level::kParagraph,
                    TranspositionWindow n_t = TranspositionWindow());

struct CorpusReport {
  EvalReport mean;
  std::vector<EvalReport> documents;
};

// Unweighted mean over documents. Throws ContractError on an empty corpus.
CorpusReport aggregate(std::vector<EvalReport> documents);

struct LabelPair {
  BoundaryLabels ref;
  BoundaryLabels hyp;
};

CorpusReport evaluate_corpus(const std::vector<LabelPair>& pairs,
                             Level level = Level::kParagraph,
                             TranspositionWindow n_t = TranspositionWindow());

// Scores paragraph breaks inside each chapter of `chapters` separately,
// ignoring the chapter seams, and averages over chapters. Chapters with a
// single sentence are skipped.
CorpusReport evaluate_within_chapters(
    const std::vector<LabelPair>& pairs,
    const std::vector<std::vector<SentenceRange>>& chapters,
    TranspositionWindow n_t = TranspositionWindow());

nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const CorpusReport& report);
// Aligned console table: F1, BS, P_k (scaled to percent).
std::string format_table(const CorpusReport& report, bool per_document);

}  // namespace paraseg

#endif  // PARASEG_METRICS_H_
