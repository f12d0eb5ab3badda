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

#include "paraseg/baselines.h"

#include <algorithm>
#include <set>

#include "paraseg/error.h"
#include "paraseg/metrics.h"
#include "paraseg/rng.h"
#include "paraseg/unicode.h"

namespace paraseg {

namespace {

const char* const kDefaultCues[] = {"(Laughter)", "(Applause)", "(Music)",
                                    "(Cheering)"};

// Candidate slack when re-checking near-ties with exact recomputation.
constexpr double kTieSlack = 1e-9;

double f1_from_counts(std::size_t tp, std::size_t n_ref, std::size_t n_hyp) {
  if (n_ref == 0 && n_hyp == 0) return 1.0;
  const double p = n_hyp ? static_cast<double>(tp) / n_hyp : 0.0;
  const double r = n_ref ? static_cast<double>(tp) / n_ref : 0.0;
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

void check_scored(const ScoredDocument& d) {
  validate(d.scores, d.gold.sentence_count());
}

}  // namespace

RulePeriod::RulePeriod(std::size_t n) : n_(n) {
  if (n == 0) throw ContractError("rule period must be at least 1");
}

Threshold::Threshold(double tau) : tau_(tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ContractError("threshold must lie in [0, 1]");
  }
}

CueLexicon::CueLexicon()
    : CueLexicon(std::vector<std::string>(std::begin(kDefaultCues),
                                          std::end(kDefaultCues))) {}

CueLexicon::CueLexicon(const std::vector<std::string>& patterns) {
  for (const std::string& raw : patterns) {
    const std::string p = normalize_whitespace(raw);
    if (p.size() < 3 || p.front() != '(' || p.back() != ')' ||
        p.find(')') != p.size() - 1) {
      throw ValidationError("cue '" + raw + "' is not fully parenthesized");
    }
    patterns_.push_back(unicode::to_lower(p));
  }
  if (patterns_.empty()) throw ValidationError("empty cue lexicon");
}

CueLexicon CueLexicon::load(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::string> patterns;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line =
        normalize_whitespace(std::string_view(text).substr(start, end - start));
    if (!line.empty() && line.front() != '#') patterns.push_back(line);
    start = end + 1;
  }
  return CueLexicon(patterns);
}

bool CueLexicon::matches(std::string_view sentence) const {
  const std::string s = unicode::to_lower(normalize_whitespace(sentence));
  if (s.empty()) return false;
  // Sentence must be a space-separated sequence of known cues.
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool found = false;
    for (const std::string& p : patterns_) {
      if (s.compare(pos, p.size(), p) == 0 &&
          (pos + p.size() == s.size() || s[pos + p.size()] == ' ')) {
        pos += p.size();
        if (pos < s.size()) ++pos;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

BoundaryLabels random_baseline(std::string doc_id, std::size_t sentence_count,
                               std::size_t breaks, std::uint64_t seed) {
  if (sentence_count == 0) throw ContractError("document has no sentences");
  if (breaks > sentence_count - 1) {
    throw ContractError("cannot place " + std::to_string(breaks) +
                        " breaks in " + std::to_string(sentence_count - 1) +
                        " boundaries");
  }
  Rng rng(seed);
  return labels_from_breaks(
      std::move(doc_id), Level::kParagraph, sentence_count,
      rng.sample_without_replacement(sentence_count - 1, breaks));
}

BoundaryLabels rule_baseline(std::string doc_id, std::size_t sentence_count,
                             RulePeriod period) {
  if (sentence_count == 0) throw ContractError("document has no sentences");
  std::vector<std::size_t> breaks;
  for (std::size_t after = period.value(); after < sentence_count;
       after += period.value()) {
    breaks.push_back(after - 1);
  }
  return labels_from_breaks(std::move(doc_id), Level::kParagraph,
                            sentence_count, breaks);
}

ParagraphLengthStats mean_paragraph_length(
    const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw ContractError("no paragraphs to average");
  std::size_t total = 0;
  for (std::size_t l : lengths) total += l;
  const std::size_t n = lengths.size();
  // floor(total / n + 1/2) without going through floating point.
  const std::size_t rounded = (2 * total + n) / (2 * n);
  return {static_cast<double>(total) / static_cast<double>(n),
          RulePeriod(std::max<std::size_t>(1, rounded))};
}

ParagraphLengthStats mean_paragraph_length(
    const std::vector<DatasetRecord>& corpus) {
  std::vector<std::size_t> lengths;
  for (const DatasetRecord& r : corpus) {
    for (const Chapter& c : r.chapters) {
      for (const Paragraph& p : c.paragraphs) lengths.push_back(p.size());
    }
  }
  return mean_paragraph_length(lengths);
}

BoundaryLabels apply_pbr(const BoundaryLabels& labels,
                         const std::vector<std::string>& sentences,
                         const CueLexicon& lexicon) {
  if (sentences.size() != labels.sentence_count()) {
    throw ContractError("labels of '" + labels.doc_id +
                        "' are not aligned with its sentences");
  }
  BoundaryLabels out = labels;
  const Label positive =
      labels.level == Level::kChapter ? Label::kChap : Label::kPara;
  auto set_break = [&](std::size_t boundary) {
    if (out.labels[boundary] == Label::kNone) out.labels[boundary] = positive;
  };
  const std::size_t m = sentences.size();
  std::size_t i = 0;
  while (i < m) {
    if (!lexicon.matches(sentences[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < m && lexicon.matches(sentences[j + 1])) ++j;
    // Run [i, j]: break before i and after j.
    if (i > 0) set_break(i - 1);
    if (j + 1 < m) set_break(j);
    i = j + 1;
  }
  return out;
}

BoundaryLabels apply_threshold(const ScoreEntry& scores, Threshold tau) {
  validate(scores);
  std::vector<std::size_t> breaks;
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    if (scores.scores[i] >= tau.value()) breaks.push_back(i);
  }
  return labels_from_breaks(scores.id, scores.level, scores.scores.size() + 1,
                            breaks);
}

double corpus_f1(const std::vector<ScoredDocument>& corpus, Threshold tau) {
  if (corpus.empty()) throw ContractError("empty scored corpus");
  double sum = 0.0;
  for (const ScoredDocument& d : corpus) {
    check_scored(d);
    sum += boundary_f1(d.gold, apply_threshold(d.scores, tau), d.scores.level)
               .f1;
  }
  return sum / static_cast<double>(corpus.size());
}

TuningResult tune_threshold(const std::vector<ScoredDocument>& corpus) {
  if (corpus.empty()) throw ContractError("empty scored corpus");

  struct Point {
    double score;
    std::size_t doc;
    bool gold;
  };
  std::vector<Point> points;
  std::vector<std::size_t> n_ref(corpus.size()), n_hyp(corpus.size()),
      tp(corpus.size());
  std::set<double> distinct = {0.0, 1.0};
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    check_scored(corpus[d]);
    const ScoreEntry& s = corpus[d].scores;
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
      const bool g = is_break(corpus[d].gold.labels[i], s.level);
      n_ref[d] += g;
      points.push_back({s.scores[i], d, g});
      distinct.insert(s.scores[i]);
    }
  }
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.score > b.score; });

  // Sweep thresholds from high to low, adding breaks as they cross.
  std::vector<double> doc_f1(corpus.size());
  double sum = 0.0;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    doc_f1[d] = f1_from_counts(0, n_ref[d], 0);
    sum += doc_f1[d];
  }
  const std::vector<double> taus(distinct.rbegin(), distinct.rend());
  std::vector<double> approx(taus.size());
  std::size_t next = 0;
  for (std::size_t c = 0; c < taus.size(); ++c) {
    while (next < points.size() && points[next].score >= taus[c]) {
      const Point& p = points[next++];
      ++n_hyp[p.doc];
      tp[p.doc] += p.gold;
      const double f = f1_from_counts(tp[p.doc], n_ref[p.doc], n_hyp[p.doc]);
      sum += f - doc_f1[p.doc];
      doc_f1[p.doc] = f;
    }
    approx[c] = sum / static_cast<double>(corpus.size());
  }

  const double best_approx = *std::max_element(approx.begin(), approx.end());
  TuningResult result;
  result.candidates = taus.size();
  bool have = false;
  // Ascending order so that exact ties keep the smallest threshold.
  for (std::size_t c = taus.size(); c-- > 0;) {
    if (approx[c] < best_approx - kTieSlack) continue;
    const double f = corpus_f1(corpus, Threshold(taus[c]));
    if (!have || f > result.f1) {
      result.tau = Threshold(taus[c]);
      result.f1 = f;
      have = true;
    }
  }
  return result;
}

BoundaryLabels hierarchical_random(std::string doc_id,
                                   std::size_t sentence_count,
                                   std::size_t chapter_count,
                                   double paragraph_rate, std::uint64_t seed) {
  if (sentence_count == 0) throw ContractError("document has no sentences");
  if (chapter_count == 0 || chapter_count > sentence_count) {
    throw ContractError("chapter count " + std::to_string(chapter_count) +
                        " does not fit " + std::to_string(sentence_count) +
                        " sentences");
  }
  if (!(paragraph_rate >= 0.0 && paragraph_rate <= 1.0)) {
    throw ContractError("paragraph rate must lie in [0, 1]");
  }
  Rng rng(seed);
  BoundaryLabels out{std::move(doc_id), Level::kHierarchical,
                     std::vector<Label>(sentence_count - 1, Label::kNone)};
  for (std::size_t b :
       rng.sample_without_replacement(sentence_count - 1, chapter_count - 1)) {
    out.labels[b] = Label::kChap;
  }
  for (Label& l : out.labels) {
    if (l == Label::kNone && rng.bernoulli(paragraph_rate)) l = Label::kPara;
  }
  return out;
}

double paragraph_break_rate(const std::vector<BoundaryLabels>& gold) {
  std::size_t para = 0, inside = 0;
  for (const BoundaryLabels& g : gold) {
    for (Label l : g.labels) {
      if (l == Label::kChap) continue;
      ++inside;
      para += l == Label::kPara;
    }
  }
  if (inside == 0) throw ContractError("no within-chapter boundaries");
  return static_cast<double>(para) / static_cast<double>(inside);
}

}  // namespace paraseg
