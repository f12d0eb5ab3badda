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

#include "paraseg/senttok.h"

#include <fstream>
#include <sstream>

#include "paraseg/error.h"
#include "paraseg/unicode.h"

namespace paraseg {

namespace {

constexpr std::u32string_view kOpeners = U"\"'([“‘¿¡";

// Longest cue we try to recognise, in bytes, including parens.
constexpr std::size_t kMaxCueBytes = 48;
constexpr int kMaxCueWords = 4;

const char* const kDefaultAbbreviations[] = {
    "mr",  "mrs", "ms",   "dr",   "prof", "sr",  "jr",  "st",  "vs",
    "etc", "e.g", "i.e",  "u.s",  "u.k",  "a.m", "p.m", "inc", "ltd",
    "co",  "corp", "mt",  "fig",  "vol",  "approx", "dept", "est",
    "gen", "gov", "lt",   "col",  "sgt",  "capt", "rev", "hon", "jan",
    "feb", "mar", "apr",  "jun",  "jul",  "aug", "sep", "sept", "oct",
    "nov", "dec", "ph.d", "u.n",  "d.c",
};

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Matches "(Word word)" starting at `pos`; returns the offset just past ')'
// or npos.
std::size_t match_cue(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || text[pos] != '(') return std::string_view::npos;
  int words = 0;
  bool in_word = false;
  for (std::size_t i = pos + 1; i < text.size() && i - pos < kMaxCueBytes;) {
    char32_t cp;
    const std::size_t len = unicode::decode_at(text, i, &cp);
    if (cp == ')') {
      return words > 0 ? i + 1 : std::string_view::npos;
    }
    if (unicode::is_letter(cp)) {
      if (!in_word && ++words > kMaxCueWords) return std::string_view::npos;
      in_word = true;
    } else if (cp == ' ') {
      in_word = false;
    } else if (!(in_word && (cp == '\'' || cp == '-' || cp == U'’'))) {
      return std::string_view::npos;
    }
    i += len;
  }
  return std::string_view::npos;
}

}  // namespace

PunctuationSet::PunctuationSet()
    : PunctuationSet(U".!?…", U"\"')]”’") {}

PunctuationSet::PunctuationSet(std::u32string terminals,
                               std::u32string closers)
    : terminals_(std::move(terminals)), closers_(std::move(closers)) {
  if (terminals_.find(U'.') == std::u32string::npos) {
    throw ValidationError("punctuation set must contain '.'");
  }
}

bool PunctuationSet::is_terminal(char32_t cp) const {
  return terminals_.find(cp) != std::u32string::npos;
}

bool PunctuationSet::is_closer(char32_t cp) const {
  return closers_.find(cp) != std::u32string::npos;
}

const PunctuationSet& default_punctuation() {
  static const PunctuationSet kDefault;
  return kDefault;
}

std::optional<std::string> final_punctuation(std::string_view sentence,
                                             const PunctuationSet& punct) {
  sentence = trim(sentence);
  std::size_t pos = sentence.size();
  // Closers first, then the terminal run they wrap.
  while (pos > 0) {
    const std::size_t prev = unicode::previous_start(sentence, pos);
    char32_t cp;
    unicode::decode_at(sentence, prev, &cp);
    if (!punct.is_closer(cp)) break;
    pos = prev;
  }
  const std::size_t closers_begin = pos;
  while (pos > 0) {
    const std::size_t prev = unicode::previous_start(sentence, pos);
    char32_t cp;
    unicode::decode_at(sentence, prev, &cp);
    if (!punct.is_terminal(cp)) break;
    pos = prev;
  }
  if (pos == closers_begin) return std::nullopt;
  return std::string(sentence.substr(pos));
}

AbbreviationList::AbbreviationList(const std::vector<std::string>& entries) {
  for (const auto& e : entries) add(e);
}

void AbbreviationList::add(std::string entry) {
  for (char c : entry) {
    if (is_ascii_space(c)) {
      throw ValidationError("abbreviation '" + entry + "' contains whitespace");
    }
  }
  if (!entry.empty() && entry.back() == '.') entry.pop_back();
  if (entry.empty()) return;
  entries_.insert(unicode::to_lower(entry));
}

bool AbbreviationList::contains(std::string_view token) const {
  if (!token.empty() && token.back() == '.') token.remove_suffix(1);
  return entries_.find(unicode::to_lower(token)) != entries_.end();
}

AbbreviationList AbbreviationList::defaults() {
  AbbreviationList list;
  for (const char* e : kDefaultAbbreviations) list.add(e);
  return list;
}

AbbreviationList AbbreviationList::parse(std::string_view text) {
  AbbreviationList list;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') list.add(std::string(line));
    start = end + 1;
  }
  return list;
}

AbbreviationList AbbreviationList::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open abbreviation list '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SentenceTokenizer::SentenceTokenizer()
    : SentenceTokenizer(AbbreviationList::defaults()) {}

SentenceTokenizer::SentenceTokenizer(AbbreviationList abbreviations,
                                     PunctuationSet punct)
    : abbreviations_(std::move(abbreviations)), punct_(std::move(punct)) {}

bool SentenceTokenizer::ends_with_abbreviation(std::string_view text,
                                               std::size_t start,
                                               std::size_t cluster_begin) const {
  std::size_t b = cluster_begin;
  while (b > start && !is_ascii_space(text[b - 1])) --b;
  std::string_view token = text.substr(b, cluster_begin - b);
  while (!token.empty()) {
    char32_t cp;
    const std::size_t len = unicode::decode_at(token, 0, &cp);
    if (kOpeners.find(cp) == std::u32string_view::npos) break;
    token.remove_prefix(len);
  }
  return !token.empty() && abbreviations_.contains(token);
}

std::vector<std::string> SentenceTokenizer::split(std::string_view text) const {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string_view s = trim(text.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = end;
  };
  auto at_sentence_start = [&](std::size_t pos) {
    return trim(text.substr(start, pos - start)).empty();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp;
    const std::size_t len = unicode::decode_at(text, i, &cp);

    if (cp == '\n') {
      std::size_t j = i;
      int newlines = 0;
      while (j < text.size() && is_ascii_space(text[j])) {
        newlines += text[j] == '\n' ? 1 : 0;
        ++j;
      }
      if (newlines >= 2) emit(i);
      i = j;
      continue;
    }

    if (cp == '(' && at_sentence_start(i)) {
      const std::size_t cue_end = match_cue(text, i);
      if (cue_end != std::string_view::npos &&
          (cue_end == text.size() || is_ascii_space(text[cue_end]))) {
        emit(cue_end);
        i = cue_end;
        continue;
      }
    }

    if (!punct_.is_terminal(cp)) {
      i += len;
      continue;
    }

    // Terminal cluster [i, cluster_end).
    std::size_t cluster_end = i;
    bool closing = false;
    while (cluster_end < text.size()) {
      char32_t c;
      const std::size_t l = unicode::decode_at(text, cluster_end, &c);
      if (!closing && punct_.is_terminal(c)) {
        cluster_end += l;
      } else if (punct_.is_closer(c)) {
        closing = true;
        cluster_end += l;
      } else {
        break;
      }
    }
    std::size_t next = cluster_end;
    while (next < text.size() && is_ascii_space(text[next])) ++next;
    bool boundary = false;
    if (next == text.size()) {
      boundary = true;
    } else if (next > cluster_end) {
      char32_t follow;
      unicode::decode_at(text, next, &follow);
      boundary = unicode::is_upper(follow) || unicode::is_digit(follow) ||
                 kOpeners.find(follow) != std::u32string_view::npos;
    }
    if (boundary && cluster_end - i == 1 && text[i] == '.' &&
        ends_with_abbreviation(text, start, i)) {
      boundary = false;
    }
    if (boundary) emit(cluster_end);
    i = cluster_end;
  }
  emit(text.size());
  return out;
}

std::vector<Sentence> SentenceTokenizer::tokenize(std::string_view text) const {
  std::vector<Sentence> out;
  for (std::string& s : split(text)) {
    Sentence sentence;
    sentence.index = out.size();
    sentence.final_punct = final_punctuation(s, punct_);
    sentence.text = std::move(s);
    out.push_back(std::move(sentence));
  }
  return out;
}

std::vector<Sentence> tokenize_sentences(std::string_view text) {
  static const SentenceTokenizer kTokenizer;
  return kTokenizer.tokenize(text);
}

}  // namespace paraseg
