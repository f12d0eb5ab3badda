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

// Content fidelity of a formatted output against its source transcript, at
// four progressively relaxed levels:
//
//   exact       identical once paragraph breaks are ignored. A whitespace
//               run that holds a paragraph delimiter (two or more newlines)
//               on either side may stand for any other non-empty whitespace
//               run; every other character, whitespace included, must
//               match. Leading and trailing whitespace is ignored.
//   whitespace  identical after collapsing whitespace runs to one space.
//   punct_case  identical after also dropping Unicode punctuation (P*) and
//               lowercasing.
//   length_5pct character counts of the punct_case forms differ by at most
//               5% of the source count.
//
// Each level implies the next.

#ifndef PARASEG_FIDELITY_H_
#define PARASEG_FIDELITY_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace paraseg {

struct FidelityReport {
  bool exact = false;
  bool whitespace = false;
  bool punct_case = false;
  bool length_5pct = false;
  // Output length over source length (punct_case forms, in code points).
  double length_ratio = 0.0;
};

inline constexpr double kLengthTolerance = 0.05;

// Throws ContractError when the source has no content.
FidelityReport check_fidelity(std::string_view source, std::string_view output);

// Whitespace-collapsed, punctuation-free, lowercased form.
std::string punct_case_normalize(std::string_view text);

struct FidelityTable {
  std::size_t documents = 0;
  double exact = 0.0;
  double whitespace = 0.0;
  double punct_case = 0.0;
  double length_5pct = 0.0;
};

// Proportion of reports passing each level. Throws ContractError when
// `reports` is empty.
FidelityTable fidelity_table(const std::vector<FidelityReport>& reports);

nlohmann::json to_json(const FidelityReport& report);
nlohmann::json to_json(const FidelityTable& table);
std::string format_table(const std::string& system, const FidelityTable& t);

}  // namespace paraseg

#endif  // PARASEG_FIDELITY_H_
