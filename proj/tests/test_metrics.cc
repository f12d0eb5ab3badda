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

#include <random>

#include "doctest.h"
#include "paraseg/error.h"
#include "oracles.h"
#include "paraseg/metrics.h"

using namespace paraseg;

namespace {

BoundaryLabels para(std::size_t m, const std::vector<std::size_t>& breaks) {
  return labels_from_breaks("d", Level::kParagraph, m, breaks);
}

std::vector<std::size_t> random_masses(std::mt19937_64& g, std::size_t total) {
  std::vector<std::size_t> out;
  std::size_t left = total;
  while (left > 0) {
    const std::size_t m =
        std::min<std::size_t>(left, 1 + g() % std::max<std::size_t>(1, total / 2));
    out.push_back(m);
    left -= m;
  }
  return out;
}

}  // namespace

TEST_CASE("boundary F1 examples") {
  const PrecisionRecall r = boundary_f1(para(6, {1, 4}), para(6, {1, 3}));
  CHECK(r.precision == doctest::Approx(0.5));
  CHECK(r.recall == doctest::Approx(0.5));
  CHECK(r.f1 == doctest::Approx(0.5));
  CHECK(boundary_f1(para(4, {}), para(4, {})).f1 == 1.0);
  CHECK(boundary_f1(para(4, {1}), para(4, {})).f1 == 0.0);
  CHECK(boundary_f1(para(4, {}), para(4, {2})).f1 == 0.0);
  CHECK_THROWS_AS(boundary_f1(para(4, {}), para(5, {})), ContractError);
}

TEST_CASE("F1 at chapter level ignores paragraph breaks") {
  BoundaryLabels ref{"d", Level::kHierarchical,
                     {Label::kPara, Label::kChap, Label::kNone}};
  BoundaryLabels hyp{"d", Level::kHierarchical,
                     {Label::kChap, Label::kPara, Label::kNone}};
  CHECK(boundary_f1(ref, hyp, Level::kParagraph).f1 == 1.0);
  CHECK(boundary_f1(ref, hyp, Level::kChapter).f1 == 0.0);
}

TEST_CASE("P_k examples") {
  CHECK(pk({2, 2}, {4}, PkWindow(1)) == doctest::Approx(1.0 / 3.0));
  // One spurious boundary in a single-segment document of ten units.
  CHECK(pk({10}, {5, 5}, PkWindow(2)) == doctest::Approx(0.25));
  CHECK(pk({3, 3}, {3, 3}) == 0.0);
  CHECK(default_pk_window({2, 2}).value() == 1);
  CHECK(default_pk_window({10}).value() == 5);
  CHECK(default_pk_window({1, 2}).value() == 1);  // 0.75 rounds to 1
  CHECK(default_pk_window({3, 3, 3, 1}).value() == 1);  // 1.25
  CHECK(default_pk_window({3, 3}).value() == 2);  // 1.5 rounds half up
  CHECK_THROWS_AS(PkWindow(0), ContractError);
  CHECK_THROWS_AS(pk({2, 2}, {3}), ContractError);
  CHECK_THROWS_AS(pk({2}, {2}, PkWindow(2)), ContractError);
}

TEST_CASE("P_k is not symmetric") {
  const std::vector<std::size_t> a = {2, 2, 2, 2, 2};
  const std::vector<std::size_t> b = {10};
  CHECK(pk(a, b) == doctest::Approx(4.0 / 9.0));
  CHECK(pk(b, a) == 1.0);
}

TEST_CASE("boundary similarity examples") {
  CHECK(boundary_similarity({3, 3}, {4, 2}) == doctest::Approx(0.5));
  CHECK(boundary_similarity({3, 3}, {6}) == 0.0);
  CHECK(boundary_similarity({6}, {3, 3}) == 0.0);
  CHECK(boundary_similarity({6}, {6}) == 1.0);
  CHECK(boundary_similarity({2, 2, 2}, {2, 2, 2}) == 1.0);
  CHECK_THROWS_AS(TranspositionWindow(1), ContractError);
}

TEST_CASE("boundary_edits pairs near misses") {
  const BoundaryEdits e = boundary_edits({2, 7}, {3, 7, 9});
  CHECK(e.matches == 1);
  CHECK(e.transpositions == std::vector<std::size_t>{1});
  CHECK(e.additions == 1);
  CHECK(mass_boundaries({2, 3, 1}) == std::vector<std::size_t>{2, 5});
}

TEST_CASE("metrics agree with brute-force references") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t total = 2 + g() % 30;
    const auto r = random_masses(g, total);
    const auto h = random_masses(g, total);
    CHECK(default_pk_window(r).value() == oracle::pk_window(r));
    CHECK(pk(r, h) == doctest::Approx(oracle::pk(r, h, oracle::pk_window(r))));
    CHECK(boundary_similarity(r, h) ==
          doctest::Approx(oracle::boundary_similarity(r, h)));
    // Boundary similarity is symmetric.
    CHECK(boundary_similarity(r, h) ==
          doctest::Approx(boundary_similarity(h, r)));
  }
}

TEST_CASE("corpus aggregation is a macro mean") {
  std::vector<LabelPair> pairs = {
      {para(6, {1, 4}), para(6, {1, 3})},
      {para(4, {}), para(4, {})},
  };
  pairs[1].ref.doc_id = pairs[1].hyp.doc_id = "e";
  const CorpusReport rep = evaluate_corpus(pairs);
  REQUIRE(rep.documents.size() == 2);
  CHECK(rep.mean.f1 == doctest::Approx((0.5 + 1.0) / 2));
  CHECK(rep.mean.pk ==
        doctest::Approx((rep.documents[0].pk + rep.documents[1].pk) / 2));
  CHECK_THROWS_AS(aggregate({}), ContractError);
  const auto j = to_json(rep);
  CHECK(j.contains("corpus"));
  CHECK(!format_table(rep, true).empty());
}

TEST_CASE("within-chapter evaluation drops cross-chapter context") {
  BoundaryLabels ref{"d", Level::kHierarchical,
                     {Label::kPara, Label::kNone, Label::kChap, Label::kNone,
                      Label::kPara}};
  BoundaryLabels hyp = ref;
  hyp.labels[0] = Label::kNone;
  const std::vector<std::vector<SentenceRange>> chapters = {
      {SentenceRange{0, 3}, SentenceRange{3, 6}}};
  const CorpusReport rep = evaluate_within_chapters({{ref, hyp}}, chapters);
  CHECK(rep.documents.size() == 2);
  CHECK(rep.documents[1].f1 == 1.0);
  CHECK(rep.documents[0].f1 == 0.0);
  CHECK_THROWS_AS(
      evaluate_within_chapters({{ref, hyp}}, {{SentenceRange{0, 9}}}),
      ContractError);
}
