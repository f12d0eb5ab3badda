#!/usr/bin/env python3
# Copyright 2026 The Paraseg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates src/unicode_tables.cc from Python's unicodedata.

Usage: python3 tools/gen_unicode_tables.py > src/unicode_tables.cc
"""

import sys
import unicodedata

MAX_CP = 0x110000

HEADER = """// Copyright 2026 The Paraseg Authors
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

// Generated by tools/gen_unicode_tables.py from Unicode {version}.
// Do not edit by hand.
"""


def ranges(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        ok = pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def category(cp):
    return unicodedata.category(chr(cp))


def emit_ranges(name, rs):
    print(f"const CodepointRange {name}[] = {{")
    for lo, hi in rs:
        print(f"    {{0x{lo:04X}, 0x{hi:04X}}},")
    print("};")
    print(f"const std::size_t {name}Size = sizeof({name}) / sizeof({name}[0]);")
    print()


def main():
    print(HEADER.format(version=unicodedata.unidata_version))
    print('#include "unicode_tables.h"')
    print()
    print("namespace paraseg::unicode_tables {")
    print()
    emit_ranges("kPunctuation", ranges(lambda cp: category(cp).startswith("P")))
    emit_ranges("kUppercase", ranges(lambda cp: category(cp) in ("Lu", "Lt")))
    emit_ranges("kLetter", ranges(lambda cp: category(cp).startswith("L")))
    emit_ranges("kWhitespace",
                ranges(lambda cp: chr(cp).isspace()))
    # Simple one-to-one lowercase mappings only.
    pairs = []
    for cp in range(MAX_CP):
        lower = chr(cp).lower()
        if len(lower) == 1 and ord(lower) != cp:
            pairs.append((cp, ord(lower)))
    print("const CaseMapping kLowercase[] = {")
    for src, dst in pairs:
        print(f"    {{0x{src:04X}, 0x{dst:04X}}},")
    print("};")
    print("const std::size_t kLowercaseSize = "
          "sizeof(kLowercase) / sizeof(kLowercase[0]);")
    print()
    print("}  // namespace paraseg::unicode_tables")


if __name__ == "__main__":
    sys.exit(main())
