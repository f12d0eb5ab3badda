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
#include "paraseg/senttok.h"
#include "paraseg/types.h"

using namespace paraseg;

TEST_CASE("tokenize examples") {
  const SentenceTokenizer tok;
  CHECK(tok.split("Hello world. How are you?") ==
        std::vector<std::string>{"Hello world.", "How are you?"});
  CHECK(tok.split("Dr. Smith arrived.") ==
        std::vector<std::string>{"Dr. Smith arrived."});
  CHECK(tok.split("Thanks. (Applause) So\xe2\x80\xa6") ==
        std::vector<std::string>{"Thanks.", "(Applause)", "So\xe2\x80\xa6"});
}

TEST_CASE("boundary rules") {
  const SentenceTokenizer tok;
  // Lowercase continuation is not a boundary.
  CHECK(tok.split("It costs 3.5 dollars. then more.").size() == 1);
  // Digits, quotes and parens open sentences.
  CHECK(tok.split("One. 2 is next.").size() == 2);
  CHECK(tok.split("He left. \"Why?\" she said.").size() == 2);
  CHECK(tok.split("Wait!) Then (see this).").size() == 2);
  // Closing quote stays with its sentence.
  CHECK(tok.split("She said \"stop.\" Then left.") ==
        std::vector<std::string>{"She said \"stop.\"", "Then left."});
  // Paragraph delimiter always splits, even without punctuation.
  CHECK(tok.split("no punctuation here\n\nnext part") ==
        std::vector<std::string>{"no punctuation here", "next part"});
  CHECK(tok.split("e.g. This stays together.").size() == 1);
  CHECK(tok.split("(Laughter) (Applause) Okay.") ==
        std::vector<std::string>{"(Laughter)", "(Applause)", "Okay."});
}

TEST_CASE("tokenizer invariants") {
  const SentenceTokenizer tok;
  const std::string text =
      "  First one.  Second one?\n Third (Laughter) one! (Applause)\n\n"
      "Fourth\xe2\x80\xa6 Fifth.";
  const std::vector<Sentence> s = tok.tokenize(text);
  std::string joined;
  for (const Sentence& x : s) {
    CHECK(!x.text.empty());
    CHECK(x.text.front() != ' ');
    CHECK(x.text.back() != ' ');
    CHECK(x.text.find("\n\n") == std::string::npos);
    joined += (joined.empty() ? "" : " ") + x.text;
  }
  CHECK(normalize_whitespace(joined) == normalize_whitespace(text));
  Transcript t{"d", text, s};
  CHECK_NOTHROW(validate(t));
  // Idempotent on single sentences.
  for (const Sentence& x : s) {
    CHECK(tok.split(x.text) == std::vector<std::string>{x.text});
  }
  CHECK(tok.split("   ").empty());
}

TEST_CASE("final punctuation") {
  CHECK(final_punctuation("Hi.") == std::optional<std::string>("."));
  CHECK(final_punctuation("Why?\"") == std::optional<std::string>("?\""));
  CHECK(final_punctuation("Well...") == std::optional<std::string>("..."));
  CHECK_FALSE(final_punctuation("no end").has_value());
  CHECK_FALSE(final_punctuation("(Laughter)").has_value());
}

TEST_CASE("abbreviation list") {
  const AbbreviationList a = AbbreviationList::parse("# comment\nprof\n\nca\n");
  CHECK(a.size() == 2);
  CHECK(a.contains("Prof."));
  CHECK(a.contains("ca"));
  CHECK_FALSE(a.contains("dr"));
  CHECK_THROWS_AS(AbbreviationList({"two words"}), ValidationError);
  const SentenceTokenizer custom(a);
  CHECK(custom.split("Prof. Jones spoke.").size() == 1);
  CHECK(custom.split("Dr. Jones spoke.").size() == 2);
  CHECK(AbbreviationList::defaults().contains("e.g"));
  CHECK_THROWS_AS(AbbreviationList::load("/nonexistent/abbr.txt"), IoError);
}
