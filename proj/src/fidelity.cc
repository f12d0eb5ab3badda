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

#include "paraseg/fidelity.h"

#include <cmath>
#include <cstdio>

#include "paraseg/error.h"
#include "paraseg/unicode.h"

namespace paraseg {

using nlohmann::json;

namespace {

std::u32string_view trim(std::u32string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && unicode::is_space(s[b])) ++b;
  while (e > b && unicode::is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::u32string collapse(std::u32string_view s) {
  std::u32string out;
  bool pending = false;
  for (char32_t c : s) {
    if (unicode::is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(U' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::u32string strip_punct_lower(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (!unicode::is_punctuation(c)) out.push_back(unicode::to_lower(c));
  }
  return collapse(out);
}

bool is_delimiter_run(std::u32string_view run) {
  int newlines = 0;
  for (char32_t c : run) newlines += c == U'\n';
  return newlines >= 2;
}

std::size_t run_end(std::u32string_view s, std::size_t i) {
  while (i < s.size() && unicode::is_space(s[i])) ++i;
  return i;
}

bool exact_modulo_breaks(std::u32string_view source, std::u32string_view out) {
  source = trim(source);
  out = trim(out);
  std::size_t i = 0, j = 0;
  while (i < source.size() && j < out.size()) {
    const bool ws_s = unicode::is_space(source[i]);
    const bool ws_o = unicode::is_space(out[j]);
    if (ws_s != ws_o) return false;
    if (!ws_s) {
      if (source[i++] != out[j++]) return false;
      continue;
    }
    const std::size_t ie = run_end(source, i), je = run_end(out, j);
    const auto rs = source.substr(i, ie - i);
    const auto ro = out.substr(j, je - j);
    if (!is_delimiter_run(rs) && !is_delimiter_run(ro) && rs != ro) {
      return false;
    }
    i = ie;
    j = je;
  }
  return i == source.size() && j == out.size();
}

}  // namespace

std::string punct_case_normalize(std::string_view text) {
  return unicode::encode(strip_punct_lower(unicode::decode(text)));
}

FidelityReport check_fidelity(std::string_view source,
                              std::string_view output) {
  const std::u32string src = unicode::decode(source);
  const std::u32string out = unicode::decode(output);
  const std::u32string src_ws = collapse(src);
  if (src_ws.empty()) {
    throw ContractError("fidelity is undefined for an empty source");
  }
  FidelityReport r;
  r.exact = exact_modulo_breaks(src, out);
  r.whitespace = src_ws == collapse(out);
  const std::u32string src_pc = strip_punct_lower(src);
  const std::u32string out_pc = strip_punct_lower(out);
  r.punct_case = src_pc == out_pc;
  if (src_pc.empty()) {
    // Punctuation-only source: lengths carry no information.
    r.length_ratio = out_pc.empty() ? 1.0 : 0.0;
    r.length_5pct = out_pc.empty();
  } else {
    const double ls = static_cast<double>(src_pc.size());
    const double lo = static_cast<double>(out_pc.size());
    r.length_ratio = lo / ls;
    r.length_5pct = std::abs(lo - ls) / ls <= kLengthTolerance;
  }
  return r;
}

FidelityTable fidelity_table(const std::vector<FidelityReport>& reports) {
  if (reports.empty()) {
    throw ContractError("fidelity table needs at least one document");
  }
  FidelityTable t;
  t.documents = reports.size();
  for (const FidelityReport& r : reports) {
    t.exact += r.exact;
    t.whitespace += r.whitespace;
    t.punct_case += r.punct_case;
    t.length_5pct += r.length_5pct;
  }
  const double n = static_cast<double>(reports.size());
  t.exact /= n;
  t.whitespace /= n;
  t.punct_case /= n;
  t.length_5pct /= n;
  return t;
}

json to_json(const FidelityReport& r) {
  return {{"exact", r.exact},
          {"whitespace", r.whitespace},
          {"punct_case", r.punct_case},
          {"length_5pct", r.length_5pct},
          {"length_ratio", r.length_ratio}};
}

json to_json(const FidelityTable& t) {
  return {{"documents", t.documents},
          {"exact", t.exact},
          {"whitespace", t.whitespace},
          {"punct_case", t.punct_case},
          {"length_5pct", t.length_5pct}};
}

std::string format_table(const std::string& system, const FidelityTable& t) {
  const int width = static_cast<int>(std::max<std::size_t>(system.size(), 6));
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-*s %6s %12s %14s %10s\n", width, "system",
                "Exact", "+Whitespace", "+Punct./Case", "Len. 5%");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-*s %6.2f %12.2f %14.2f %10.2f\n", width,
                system.c_str(), t.exact, t.whitespace, t.punct_case,
                t.length_5pct);
  out += buf;
  return out;
}

}  // namespace paraseg
