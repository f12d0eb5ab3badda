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
#include "paraseg/fidelity.h"

using namespace paraseg;

TEST_CASE("inserting breaks keeps every level") {
  const FidelityReport r = check_fidelity("One. Two. Three.", "One. Two.\n\nThree.");
  CHECK(r.exact);
  CHECK(r.whitespace);
  CHECK(r.punct_case);
  CHECK(r.length_5pct);
  CHECK(r.length_ratio == doctest::Approx(1.0));
}

TEST_CASE("whitespace-only edits fail exact") {
  const FidelityReport r = check_fidelity("One. Two.", "One.  Two.");
  CHECK_FALSE(r.exact);
  CHECK(r.whitespace);
  CHECK(r.punct_case);
  CHECK(check_fidelity("One.\nTwo.", "One. Two.").exact == false);
  CHECK(check_fidelity("  One. Two.  ", "One. Two.").exact);
}

TEST_CASE("punctuation and case changes") {
  const FidelityReport r = check_fidelity("Hello, world.", "hello world");
  CHECK_FALSE(r.exact);
  CHECK_FALSE(r.whitespace);
  CHECK(r.punct_case);
  CHECK(punct_case_normalize("Hi,  THERE!") == "hi there");
}

TEST_CASE("length tolerance") {
  const std::string src(100, 'a');
  CHECK(check_fidelity(src, std::string(105, 'a')).length_5pct);
  CHECK(check_fidelity(src, std::string(95, 'a')).length_5pct);
  CHECK_FALSE(check_fidelity(src, std::string(106, 'a')).length_5pct);
  CHECK_FALSE(check_fidelity(src, std::string(94, 'a')).length_5pct);
  CHECK_FALSE(check_fidelity(src, std::string(106, 'a')).punct_case);
}

TEST_CASE("word edits") {
  const FidelityReport r = check_fidelity("I went home.", "I walked home.");
  CHECK_FALSE(r.exact);
  CHECK_FALSE(r.whitespace);
  CHECK_FALSE(r.punct_case);
  CHECK_THROWS_AS(check_fidelity(" \n ", "x"), ContractError);
}

TEST_CASE("fidelity table") {
  const FidelityTable t = fidelity_table(
      {check_fidelity("A b.", "A b."), check_fidelity("A b.", "a b")});
  CHECK(t.documents == 2);
  CHECK(t.exact == doctest::Approx(0.5));
  CHECK(t.punct_case == doctest::Approx(1.0));
  CHECK_THROWS_AS(fidelity_table({}), ContractError);
  CHECK(to_json(t).contains("exact"));
  CHECK(format_table("sys", t).find("sys") != std::string::npos);
}

TEST_CASE("multibyte text") {
  CHECK(check_fidelity("Café. Über.", "Café.\n\nÜber.").exact);
  CHECK(check_fidelity("Café.", "CAFÉ").punct_case);
}
