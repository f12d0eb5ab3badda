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

#include "paraseg/metrics.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <tuple>

#include "paraseg/error.h"

namespace paraseg {

using nlohmann::json;

namespace {

std::size_t total_mass(const std::vector<std::size_t>& masses) {
  for (std::size_t m : masses) {
    if (m == 0) throw ContractError("segment masses must be positive");
  }
  return std::accumulate(masses.begin(), masses.end(), std::size_t{0});
}

// Segment index of every sentence.
std::vector<std::size_t> segment_ids(const std::vector<std::size_t>& masses) {
  std::vector<std::size_t> ids;
  for (std::size_t s = 0; s < masses.size(); ++s) {
    ids.insert(ids.end(), masses[s], s);
  }
  return ids;
}

void check_same_shape(const BoundaryLabels& ref, const BoundaryLabels& hyp) {
  if (ref.labels.size() != hyp.labels.size()) {
    throw ContractError("reference and hypothesis of '" + ref.doc_id +
                        "' differ in length (" +
                        std::to_string(ref.labels.size()) + " vs " +
                        std::to_string(hyp.labels.size()) + ")");
  }
}

}  // namespace

PkWindow::PkWindow(std::size_t k) : k_(k) {
  if (k == 0) throw ContractError("P_k window must be at least 1");
}

TranspositionWindow::TranspositionWindow(std::size_t n_t) : n_t_(n_t) {
  if (n_t < 2) throw ContractError("transposition window must be at least 2");
}

PrecisionRecall boundary_f1(const BoundaryLabels& ref,
                            const BoundaryLabels& hyp, Level level) {
  check_same_shape(ref, hyp);
  std::size_t tp = 0, n_ref = 0, n_hyp = 0;
  for (std::size_t i = 0; i < ref.labels.size(); ++i) {
    const bool r = is_break(ref.labels[i], level);
    const bool h = is_break(hyp.labels[i], level);
    n_ref += r;
    n_hyp += h;
    tp += r && h;
  }
  PrecisionRecall out;
  if (n_ref == 0 && n_hyp == 0) return {1.0, 1.0, 1.0};
  out.precision = n_hyp > 0 ? static_cast<double>(tp) / n_hyp : 0.0;
  out.recall = n_ref > 0 ? static_cast<double>(tp) / n_ref : 0.0;
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

PkWindow default_pk_window(const std::vector<std::size_t>& ref_masses) {
  if (ref_masses.empty()) throw ContractError("empty reference masses");
  const std::size_t total = total_mass(ref_masses);
  // round(L / (2 n)) with halves rounded up, in integer arithmetic.
  const std::size_t twice_segments = 2 * ref_masses.size();
  const std::size_t k = (2 * total + twice_segments) / (2 * twice_segments);
  return PkWindow(std::max<std::size_t>(1, k));
}

double pk(const std::vector<std::size_t>& ref_masses,
          const std::vector<std::size_t>& hyp_masses,
          std::optional<PkWindow> window) {
  const std::size_t total = total_mass(ref_masses);
  if (total != total_mass(hyp_masses)) {
    throw ContractError("P_k needs equal total mass (" +
                        std::to_string(total) + " vs " +
                        std::to_string(total_mass(hyp_masses)) + ")");
  }
  const std::size_t k =
      (window ? *window : default_pk_window(ref_masses)).value();
  if (total <= k) {
    throw ContractError("P_k needs total mass " + std::to_string(total) +
                        " greater than k = " + std::to_string(k));
  }
  const auto ref = segment_ids(ref_masses);
  const auto hyp = segment_ids(hyp_masses);
  std::size_t errors = 0;
  const std::size_t probes = total - k;
  for (std::size_t i = 0; i < probes; ++i) {
    const bool ref_same = ref[i] == ref[i + k];
    const bool hyp_same = hyp[i] == hyp[i + k];
    errors += ref_same != hyp_same;
  }
  return static_cast<double>(errors) / static_cast<double>(probes);
}

std::vector<std::size_t> mass_boundaries(
    const std::vector<std::size_t>& masses) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < masses.size(); ++i) {
    pos += masses[i];
    out.push_back(pos);
  }
  return out;
}

BoundaryEdits boundary_edits(const std::vector<std::size_t>& ref_positions,
                             const std::vector<std::size_t>& hyp_positions,
                             TranspositionWindow n_t) {
  const std::set<std::size_t> ref(ref_positions.begin(), ref_positions.end());
  const std::set<std::size_t> hyp(hyp_positions.begin(), hyp_positions.end());
  BoundaryEdits edits;
  std::vector<std::size_t> ref_left, hyp_left;
  for (std::size_t r : ref) {
    if (hyp.count(r)) {
      ++edits.matches;
    } else {
      ref_left.push_back(r);
    }
  }
  for (std::size_t h : hyp) {
    if (!ref.count(h)) hyp_left.push_back(h);
  }

  // Candidate transpositions, nearest first, then left to right.
  using Candidate = std::tuple<std::size_t, std::size_t, std::size_t,
                               std::size_t>;  // distance, left, ri, hi
  std::vector<Candidate> candidates;
  for (std::size_t ri = 0; ri < ref_left.size(); ++ri) {
    for (std::size_t hi = 0; hi < hyp_left.size(); ++hi) {
      const std::size_t r = ref_left[ri], h = hyp_left[hi];
      const std::size_t d = r > h ? r - h : h - r;
      if (d < n_t.value()) candidates.emplace_back(d, std::min(r, h), ri, hi);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<bool> ref_used(ref_left.size()), hyp_used(hyp_left.size());
  for (const auto& [d, left, ri, hi] : candidates) {
    if (ref_used[ri] || hyp_used[hi]) continue;
    ref_used[ri] = hyp_used[hi] = true;
    edits.transpositions.push_back(d);
  }
  edits.additions = (ref_left.size() - edits.transpositions.size()) +
                    (hyp_left.size() - edits.transpositions.size());
  return edits;
}

double boundary_similarity(const std::vector<std::size_t>& ref_masses,
                           const std::vector<std::size_t>& hyp_masses,
                           TranspositionWindow n_t) {
  if (total_mass(ref_masses) != total_mass(hyp_masses)) {
    throw ContractError("boundary similarity needs equal total mass");
  }
  const BoundaryEdits e = boundary_edits(mass_boundaries(ref_masses),
                                         mass_boundaries(hyp_masses), n_t);
  const std::size_t denominator =
      e.additions + e.transpositions.size() + e.matches;
  if (denominator == 0) return 1.0;
  double weight = 0.0;
  for (std::size_t d : e.transpositions) {
    weight += static_cast<double>(d) / static_cast<double>(n_t.value());
  }
  return 1.0 - (static_cast<double>(e.additions) + weight) /
                   static_cast<double>(denominator);
}

EvalReport evaluate(const BoundaryLabels& ref, const BoundaryLabels& hyp,
                    Level level, TranspositionWindow n_t) {
  check_same_shape(ref, hyp);
  EvalReport report;
  report.doc_id = ref.doc_id;
  const PrecisionRecall pr = boundary_f1(ref, hyp, level);
  report.precision = pr.precision;
  report.recall = pr.recall;
  report.f1 = pr.f1;
  const auto ref_masses = labels_to_masses(ref, level);
  const auto hyp_masses = labels_to_masses(hyp, level);
  const PkWindow window = default_pk_window(ref_masses);
  report.k = static_cast<double>(window.value());
  // A single sentence has no probes; both sides are trivially identical.
  report.pk = ref.sentence_count() > window.value()
                  ? pk(ref_masses, hyp_masses, window)
                  : 0.0;
  report.boundary_similarity =
      boundary_similarity(ref_masses, hyp_masses, n_t);
  return report;
}

CorpusReport aggregate(std::vector<EvalReport> documents) {
  if (documents.empty()) throw ContractError("cannot aggregate an empty corpus");
  CorpusReport out;
  out.mean.doc_id = "corpus";
  for (const EvalReport& r : documents) {
    out.mean.precision += r.precision;
    out.mean.recall += r.recall;
    out.mean.f1 += r.f1;
    out.mean.pk += r.pk;
    out.mean.boundary_similarity += r.boundary_similarity;
    out.mean.k += r.k;
  }
  const double n = static_cast<double>(documents.size());
  out.mean.precision /= n;
  out.mean.recall /= n;
  out.mean.f1 /= n;
  out.mean.pk /= n;
  out.mean.boundary_similarity /= n;
  out.mean.k /= n;
  out.documents = std::move(documents);
  return out;
}

CorpusReport evaluate_corpus(const std::vector<LabelPair>& pairs, Level level,
                             TranspositionWindow n_t) {
  std::vector<EvalReport> reports;
  reports.reserve(pairs.size());
  for (const LabelPair& p : pairs) {
    reports.push_back(evaluate(p.ref, p.hyp, level, n_t));
  }
  return aggregate(std::move(reports));
}

CorpusReport evaluate_within_chapters(
    const std::vector<LabelPair>& pairs,
    const std::vector<std::vector<SentenceRange>>& chapters,
    TranspositionWindow n_t) {
  if (pairs.size() != chapters.size()) {
    throw ContractError("one chapter list per document is required");
  }
  std::vector<EvalReport> reports;
  for (std::size_t d = 0; d < pairs.size(); ++d) {
    const LabelPair& p = pairs[d];
    check_same_shape(p.ref, p.hyp);
    for (std::size_t c = 0; c < chapters[d].size(); ++c) {
      const SentenceRange range = chapters[d][c];
      if (range.end > p.ref.sentence_count() || range.begin >= range.end) {
        throw ContractError("chapter span outside document '" +
                            p.ref.doc_id + "'");
      }
      if (range.size() < 2) continue;
      const std::string id = p.ref.doc_id + "#" + std::to_string(c);
      BoundaryLabels ref{id, Level::kParagraph, {}};
      BoundaryLabels hyp{id, Level::kParagraph, {}};
      for (std::size_t b = range.begin; b + 1 < range.end; ++b) {
        ref.labels.push_back(is_break(p.ref.labels[b], Level::kParagraph)
                                 ? Label::kPara
                                 : Label::kNone);
        hyp.labels.push_back(is_break(p.hyp.labels[b], Level::kParagraph)
                                 ? Label::kPara
                                 : Label::kNone);
      }
      reports.push_back(evaluate(ref, hyp, Level::kParagraph, n_t));
    }
  }
  return aggregate(std::move(reports));
}

json to_json(const EvalReport& r) {
  return {{"id", r.doc_id},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"bs", r.boundary_similarity},
          {"pk", r.pk},
          {"k", r.k}};
}

json to_json(const CorpusReport& report) {
  json docs = json::array();
  for (const EvalReport& r : report.documents) docs.push_back(to_json(r));
  return {{"corpus", to_json(report.mean)},
          {"documents", std::move(docs)}};
}

std::string format_table(const CorpusReport& report, bool per_document) {
  std::size_t width = 8;
  if (per_document) {
    for (const EvalReport& r : report.documents) {
      width = std::max(width, r.doc_id.size());
    }
  }
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-*s %8s %8s %8s\n",
                static_cast<int>(width), "document", "F1", "BS", "P_k");
  out += line;
  auto row = [&](const EvalReport& r) {
    std::snprintf(line, sizeof(line), "%-*s %8.1f %8.1f %8.1f\n",
                  static_cast<int>(width), r.doc_id.c_str(), 100.0 * r.f1,
                  100.0 * r.boundary_similarity, 100.0 * r.pk);
    out += line;
  };
  if (per_document) {
    for (const EvalReport& r : report.documents) row(r);
  }
  row(report.mean);
  return out;
}

}  // namespace paraseg
