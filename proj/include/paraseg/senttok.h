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

// Rule-based sentence boundary detection.
//
// A boundary is placed after a terminal punctuation cluster when
//   * the cluster is followed by whitespace and then an uppercase letter, a
//     digit, an opening quote/paren, or the end of the text, and
//   * a lone "." does not close a listed abbreviation ("Dr.", "e.g.").
// Standalone parenthesized cues such as "(Laughter)" that open a sentence
// are closed right after their ")". A paragraph delimiter (two newlines)
// always ends a sentence.

#ifndef PARASEG_SENTTOK_H_
#define PARASEG_SENTTOK_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paraseg/types.h"

namespace paraseg {

// Terminal characters plus the closing quotes/parens that may trail them
// ('."', '?"', '.)', ...).
class PunctuationSet {
 public:
  PunctuationSet();
  PunctuationSet(std::u32string terminals, std::u32string closers);

  bool is_terminal(char32_t cp) const;
  bool is_closer(char32_t cp) const;

 private:
  std::u32string terminals_;
  std::u32string closers_;
};

const PunctuationSet& default_punctuation();

// Trailing punctuation cluster of `sentence` (terminal run plus optional
// closers), or nullopt when the sentence does not end in a terminal.
std::optional<std::string> final_punctuation(
    std::string_view sentence,
    const PunctuationSet& punct = default_punctuation());

class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(const std::vector<std::string>& entries);

  // Throws ValidationError for entries with whitespace.
  void add(std::string entry);
  // Lookup is case-insensitive; a trailing '.' on `token` is ignored.
  bool contains(std::string_view token) const;
  std::size_t size() const { return entries_.size(); }

  static AbbreviationList defaults();
  // One entry per line; blank lines and '#' comments are skipped.
  static AbbreviationList load(const std::string& path);
  static AbbreviationList parse(std::string_view text);

 private:
  std::set<std::string, std::less<>> entries_;
};

class SentenceTokenizer {
 public:
  SentenceTokenizer();
  explicit SentenceTokenizer(AbbreviationList abbreviations,
                             PunctuationSet punct = default_punctuation());

  std::vector<Sentence> tokenize(std::string_view text) const;
  std::vector<std::string> split(std::string_view text) const;

  const AbbreviationList& abbreviations() const { return abbreviations_; }

 private:
  bool ends_with_abbreviation(std::string_view text, std::size_t start,
                              std::size_t cluster_begin) const;

  AbbreviationList abbreviations_;
  PunctuationSet punct_;
};

// Tokenizes with the default abbreviation list.
std::vector<Sentence> tokenize_sentences(std::string_view text);

}  // namespace paraseg

#endif  // PARASEG_SENTTOK_H_
