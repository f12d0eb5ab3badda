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

"""Paragraph and chapter segmentation of speech transcripts."""

from ._paraseg import (
    ContractError,
    IoError,
    ValidationError,
    apply_pbr,
    boundary_similarity,
    check_fidelity,
    compute_elo,
    evaluate,
    insert_paragraphs,
    parse_plain_text,
    pk,
    random_baseline,
    rule_baseline,
    split_sentences,
)

__all__ = [
    "ContractError",
    "IoError",
    "ValidationError",
    "apply_pbr",
    "boundary_similarity",
    "check_fidelity",
    "compute_elo",
    "evaluate",
    "insert_paragraphs",
    "parse_plain_text",
    "pk",
    "random_baseline",
    "rule_baseline",
    "split_sentences",
]
