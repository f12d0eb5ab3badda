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

// Minimal UTF-8 and character-class helpers. Classes come from tables
// generated by tools/gen_unicode_tables.py.

#ifndef PARASEG_UNICODE_H_
#define PARASEG_UNICODE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace paraseg::unicode {

// Invalid sequences decode to U+FFFD one byte at a time.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

// Decodes the code point starting at byte `pos`; returns its byte length.
std::size_t decode_at(std::string_view utf8, std::size_t pos, char32_t* cp);
// Byte offset of the code point ending right before `pos`.
std::size_t previous_start(std::string_view utf8, std::size_t pos);

// General category P*.
bool is_punctuation(char32_t cp);
// Lu or Lt.
bool is_upper(char32_t cp);
// L*.
bool is_letter(char32_t cp);
bool is_space(char32_t cp);
bool is_digit(char32_t cp);
char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view utf8);

}  // namespace paraseg::unicode

#endif  // PARASEG_UNICODE_H_
