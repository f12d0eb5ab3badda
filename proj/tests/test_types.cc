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

#include "doctest.h"
#include "paraseg/error.h"
#include "paraseg/types.h"

using namespace paraseg;

namespace {

BoundaryLabels hier(std::vector<int> v) {
  BoundaryLabels b{"d", Level::kHierarchical, {}};
  for (int x : v) b.labels.push_back(static_cast<Label>(x));
  return b;
}

std::vector<int> ints(const BoundaryLabels& b) {
  std::vector<int> out;
  for (Label l : b.labels) out.push_back(static_cast<int>(l));
  return out;
}

}  // namespace

TEST_CASE("labels_to_masses") {
  const BoundaryLabels five =
      labels_from_breaks("d", Level::kParagraph, 5, {1, 3});
  CHECK(labels_to_masses(five, Level::kParagraph) ==
        std::vector<std::size_t>{2, 2, 1});
  CHECK(labels_to_masses(labels_from_breaks("d", Level::kParagraph, 4, {}),
                         Level::kParagraph) == std::vector<std::size_t>{4});
  CHECK(labels_to_masses(BoundaryLabels{"d", Level::kParagraph, {}},
                         Level::kParagraph) == std::vector<std::size_t>{1});
  // A level absent from the labels is a caller error.
  CHECK_THROWS_AS(labels_to_masses(five, Level::kChapter), ContractError);
}

TEST_CASE("masses round trip") {
  for (std::size_t m = 1; m <= 7; ++m) {
    for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
      std::vector<std::size_t> breaks;
      for (std::size_t b = 0; b + 1 < m; ++b) {
        if (mask & (1u << b)) breaks.push_back(b);
      }
      const BoundaryLabels l =
          labels_from_breaks("d", Level::kParagraph, m, breaks);
      const auto masses = labels_to_masses(l, Level::kParagraph);
      std::size_t sum = 0;
      for (auto x : masses) sum += x;
      CHECK(sum == m);
      CHECK(masses.size() == breaks.size() + 1);
      CHECK(masses_to_labels("d", masses, Level::kParagraph) == l);
    }
  }
}

TEST_CASE("project_hierarchical") {
  const BoundaryLabels h = hier({0, 1, 2});
  CHECK(ints(project_hierarchical(h, Level::kParagraph)) ==
        std::vector<int>{0, 1, 1});
  CHECK(ints(project_hierarchical(h, Level::kChapter)) ==
        std::vector<int>{0, 0, 2});
  CHECK(project_hierarchical(h, Level::kChapter).break_positions(
            Level::kChapter) == std::vector<std::size_t>{2});
  const BoundaryLabels none = hier({0, 0, 0});
  CHECK(project_hierarchical(none, Level::kParagraph).break_count(
            Level::kParagraph) == 0);
  CHECK(project_hierarchical(none, Level::kChapter).break_count(
            Level::kChapter) == 0);
  CHECK_THROWS_AS(project_hierarchical(
                      labels_from_breaks("d", Level::kParagraph, 3, {0}),
                      Level::kChapter),
                  ContractError);
}

TEST_CASE("is_break views") {
  CHECK(is_break(Label::kChap, Level::kParagraph));
  CHECK(is_break(Label::kPara, Level::kParagraph));
  CHECK_FALSE(is_break(Label::kPara, Level::kChapter));
  CHECK(is_break(Label::kChap, Level::kChapter));
  CHECK_FALSE(is_break(Label::kNone, Level::kParagraph));
}

TEST_CASE("label validation") {
  BoundaryLabels bad{"d", Level::kParagraph, {Label::kChap}};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  BoundaryLabels chap{"d", Level::kChapter, {Label::kPara}};
  CHECK_THROWS_AS(validate(chap), ValidationError);
  CHECK_NOTHROW(validate(hier({0, 1, 2})));
  CHECK(parse_level("chapter") == Level::kChapter);
  CHECK_THROWS_AS(parse_level("section"), ValidationError);
}

TEST_CASE("transcript invariants") {
  const Transcript t = make_transcript("d", {"Hello there.", "How are you?"});
  CHECK(t.text == "Hello there. How are you?");
  CHECK(t.sentences[1].index == 1);
  CHECK(t.sentences[1].final_punct == std::optional<std::string>("?"));
  CHECK_NOTHROW(validate(t));

  Transcript broken = t;
  broken.text = "Hello there. How are we?";
  CHECK_THROWS_AS(validate(broken), ValidationError);
  Transcript delim = make_transcript("d", {"A.", "B."});
  delim.sentences[0].text = "A.\n\nX";
  CHECK_THROWS_AS(validate(delim), ValidationError);
  Transcript empty{"d", "  ", {}};
  CHECK_NOTHROW(validate(empty));
  Transcript missing{"d", "words", {}};
  CHECK_THROWS_AS(validate(missing), ValidationError);
}

TEST_CASE("segmented document chapters") {
  SegmentedDocument doc{make_transcript("d", {"A.", "B.", "C."}),
                        hier({2, 0}),
                        std::vector<ChapterSpan>{{std::nullopt, {0, 1}},
                                                 {std::string("two"), {1, 3}}}};
  CHECK_NOTHROW(validate(doc));
  doc.chapters = std::vector<ChapterSpan>{{std::nullopt, {0, 2}},
                                          {std::nullopt, {2, 3}}};
  CHECK_THROWS_AS(validate(doc), ValidationError);  // seam without a break
  doc.chapters = std::vector<ChapterSpan>{{std::nullopt, {0, 1}}};
  CHECK_THROWS_AS(validate(doc), ValidationError);  // does not cover
}

TEST_CASE("normalize_whitespace") {
  CHECK(normalize_whitespace("  a \t b\n\nc  ") == "a b c");
  CHECK(normalize_whitespace("") == "");
}
