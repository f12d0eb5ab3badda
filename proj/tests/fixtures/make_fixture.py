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

"""Writes the end-to-end fixture corpus and its mock LM policy.

Usage: python3 make_fixture.py OUT_DIR
"""

import json
import os
import random
import sys

WORDS = ("idea story water people city music brain light change data "
         "future money design school energy world voice problem machine "
         "question ocean family language").split()
CUES = ["(Laughter)", "(Applause)", "(Laughter) (Applause)", "(Music)"]
ENDINGS = [".", ".", ".", "?", "!", "...", ".\""]


def sentence(rng):
  n = rng.randint(3, 9)
  words = [rng.choice(WORDS) for _ in range(n)]
  words[0] = words[0].capitalize()
  if rng.random() < 0.08:
    return " ".join(words)
  return " ".join(words) + rng.choice(ENDINGS)


def document(rng, index):
  chapters = []
  for c in range(rng.randint(1, 3)):
    paragraphs = []
    for _ in range(rng.randint(1, 4)):
      para = [sentence(rng) for _ in range(rng.randint(1, 6))]
      if rng.random() < 0.35:
        para.insert(rng.randint(0, len(para)), rng.choice(CUES))
      paragraphs.append(para)
    chapter = {"paragraphs": paragraphs}
    if rng.random() < 0.5:
      chapter["title"] = "Part %d" % (c + 1)
    chapters.append(chapter)
  return {"id": "talk-%02d" % index, "chapters": chapters}


def policy(rng, docs):
  out = {"default": "continue", "documents": {}}
  for d in docs:
    m = sum(len(p) for c in d["chapters"] for p in c["paragraphs"])
    boundaries = {}
    for b in range(m - 1):
      r = rng.random()
      if r < 0.25:
        boundaries[str(b)] = "break"
      elif r < 0.30:
        boundaries[str(b)] = {"continue": -0.75, "break": -0.75}
      elif r < 0.40:
        keep = -round(rng.uniform(0.05, 3.0), 3)
        split = -round(rng.uniform(0.05, 3.0), 3)
        boundaries[str(b)] = {"continue": keep, "break": split}
    out["documents"][d["id"]] = {"boundaries": boundaries}
  return out


def main():
  out_dir = sys.argv[1]
  rng = random.Random(20240817)
  docs = [document(rng, i) for i in range(10)]
  with open(os.path.join(out_dir, "corpus.jsonl"), "w") as f:
    for d in docs:
      f.write(json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n")
  with open(os.path.join(out_dir, "policy.json"), "w") as f:
    json.dump(policy(rng, docs), f, sort_keys=True, indent=1)
    f.write("\n")


if __name__ == "__main__":
  main()
