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

#ifndef PARASEG_SRC_UNICODE_TABLES_H_
#define PARASEG_SRC_UNICODE_TABLES_H_

#include <cstddef>
#include <cstdint>

namespace paraseg::unicode_tables {

struct CodepointRange {
  std::uint32_t lo;
  std::uint32_t hi;
};

struct CaseMapping {
  std::uint32_t from;
  std::uint32_t to;
};

// All tables are sorted ascending and non-overlapping.
extern const CodepointRange kPunctuation[];
extern const std::size_t kPunctuationSize;
extern const CodepointRange kUppercase[];
extern const std::size_t kUppercaseSize;
extern const CodepointRange kLetter[];
extern const std::size_t kLetterSize;
extern const CodepointRange kWhitespace[];
extern const std::size_t kWhitespaceSize;
extern const CaseMapping kLowercase[];
extern const std::size_t kLowercaseSize;

}  // namespace paraseg::unicode_tables

#endif  // PARASEG_SRC_UNICODE_TABLES_H_
