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

#include "paraseg/unicode.h"

#include <algorithm>

#include "unicode_tables.h"

namespace paraseg::unicode {

namespace {

using unicode_tables::CaseMapping;
using unicode_tables::CodepointRange;

constexpr char32_t kReplacement = 0xFFFD;

bool in_ranges(const CodepointRange* table, std::size_t size, char32_t cp) {
  const CodepointRange* end = table + size;
  const CodepointRange* it = std::upper_bound(
      table, end, cp,
      [](char32_t v, const CodepointRange& r) { return v < r.lo; });
  if (it == table) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

std::size_t decode_at(std::string_view s, std::size_t pos, char32_t* cp) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len = 0;
  char32_t value = 0;
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
  } else {
    *cp = kReplacement;
    return 1;
  }
  if (pos + len > s.size()) {
    *cp = kReplacement;
    return 1;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if (!is_continuation(b)) {
      *cp = kReplacement;
      return 1;
    }
    value = (value << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMin[len] || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    *cp = kReplacement;
    return 1;
  }
  *cp = value;
  return len;
}

std::size_t previous_start(std::string_view s, std::size_t pos) {
  if (pos == 0) return 0;
  std::size_t p = pos - 1;
  std::size_t steps = 0;
  while (p > 0 && steps < 3 && is_continuation(static_cast<unsigned char>(s[p]))) {
    --p;
    ++steps;
  }
  char32_t cp;
  if (p + decode_at(s, p, &cp) == pos) return p;
  return pos - 1;
}

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  for (std::size_t i = 0; i < utf8.size();) {
    char32_t cp;
    i += decode_at(utf8, i, &cp);
    out.push_back(cp);
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_punctuation(char32_t cp) {
  return in_ranges(unicode_tables::kPunctuation,
                   unicode_tables::kPunctuationSize, cp);
}

bool is_upper(char32_t cp) {
  return in_ranges(unicode_tables::kUppercase, unicode_tables::kUppercaseSize,
                   cp);
}

bool is_letter(char32_t cp) {
  return in_ranges(unicode_tables::kLetter, unicode_tables::kLetterSize, cp);
}

bool is_space(char32_t cp) {
  return in_ranges(unicode_tables::kWhitespace,
                   unicode_tables::kWhitespaceSize, cp);
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  }
  const CaseMapping* begin = unicode_tables::kLowercase;
  const CaseMapping* end = begin + unicode_tables::kLowercaseSize;
  const CaseMapping* it = std::lower_bound(
      begin, end, cp,
      [](const CaseMapping& m, char32_t v) { return m.from < v; });
  return (it != end && it->from == cp) ? it->to : cp;
}

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (std::size_t i = 0; i < utf8.size();) {
    char32_t cp;
    i += decode_at(utf8, i, &cp);
    append_utf8(out, to_lower(cp));
  }
  return out;
}

}  // namespace paraseg::unicode
