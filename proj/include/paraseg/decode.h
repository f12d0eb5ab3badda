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

// Sentence-wise constrained decoding for paragraph insertion.
//
// At every sentence boundary the partially formatted output has its final
// punctuation stripped and is sent, with the full transcript, as an
// assistant prefill. The model then only chooses between restoring the
// punctuation ("continue") and the punctuation followed by a paragraph
// delimiter ("break"). A break wins only when its best log-probability is
// strictly higher. Sentence text is copied from the source, so the output
// always equals the input modulo paragraph breaks.

#ifndef PARASEG_DECODE_H_
#define PARASEG_DECODE_H_

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "paraseg/error.h"
#include "paraseg/lm.h"
#include "paraseg/types.h"

namespace paraseg {

inline constexpr std::string_view kParagraphDelimiter = "\n\n";
inline constexpr std::string_view kInputPlaceholder = "{input}";

struct PromptTemplate {
  std::string system;
  std::string user;     // exactly one {input}
  std::string prefill;  // ends with the paragraph delimiter

  // Throws TemplateError.
  void validate() const;

  // JSON file with "system", "user" and "prefill" string fields.
  static PromptTemplate load(const std::string& path);
  static PromptTemplate from_json(const nlohmann::json& j);
  // The paragraph-insertion prompt used for TED-style transcripts.
  static PromptTemplate paragraph_insertion();
};

// [system, user with the transcript substituted, assistant prefill + output
// so far]. The caller strips the pending punctuation from `output_so_far`.
std::vector<Message> build_prompt(const PromptTemplate& prompt,
                                  std::string_view transcript_text,
                                  std::string_view output_so_far);

// Continuation strings offered at one boundary.
struct BreakCandidateSet {
  std::string keep;                 // the punctuation alone
  std::vector<std::string> breaks;  // punctuation + delimiter variants

  // Every candidate after the first ends with the delimiter.
  static BreakCandidateSet for_punctuation(std::string_view punct);
  std::vector<std::string> all() const;
};

struct DecoderState {
  std::string output;
  std::size_t next_index = 0;  // boundary about to be decided
  std::vector<Label> decisions;
  std::size_t call_count = 0;
};

struct BoundaryDecision {
  bool is_break = false;
  std::string token;  // chosen candidate
  double p_keep = 0.0;
  double p_break = 0.0;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

// Raised when the LM keeps failing. Carries everything decided so far so
// that decoding can resume from `partial.labels.size()`.
class DecodeAborted : public Error {
 public:
  DecodeAborted(const std::string& what, BoundaryLabels partial,
                std::string partial_output)
      : Error(what),
        partial_(std::move(partial)),
        partial_output_(std::move(partial_output)) {}

  const BoundaryLabels& partial() const { return partial_; }
  const std::string& partial_output() const { return partial_output_; }

 private:
  BoundaryLabels partial_;
  std::string partial_output_;
};

struct InsertResult {
  std::string text;
  BoundaryLabels labels;
  std::size_t lm_calls = 0;  // queries issued during this run
};

struct DecodeOptions {
  RetryPolicy retry;
  // Decisions from an earlier aborted run, replayed without querying.
  std::vector<Label> resume;
  // Called after every decision.
  std::function<void(const DecoderState&)> on_decision;
  // Replaces std::this_thread::sleep_for between retries.
  std::function<void(std::chrono::milliseconds)> sleep;
};

class ConstrainedDecoder {
 public:
  ConstrainedDecoder(LmClient& lm, PromptTemplate prompt,
                     DecodeOptions options = {});

  // One LM query for boundary `state.next_index`; `punct` is the final
  // punctuation of the sentence before the boundary (nullopt when it has
  // none, in which case "." stands in and nothing is stripped). Does not
  // modify `state`. Retries transport errors per the policy and rethrows
  // the last one when attempts run out.
  BoundaryDecision decide_boundary(const DecoderState& state,
                                   std::string_view transcript_text,
                                   const std::optional<std::string>& punct,
                                   const std::string& doc_id) const;

  InsertResult insert_paragraphs(const Transcript& transcript) const;

  // Decodes every chapter independently; chapter seams are CHAP and
  // within-chapter breaks PARA.
  InsertResult insert_paragraphs_sectionwise(const SegmentedDocument& doc) const;

  // Unconstrained rewrite through the generation endpoint.
  std::string naive_rewrite(const Transcript& transcript,
                            std::size_t max_tokens = 4096) const;

 private:
  LmClient& lm_;
  PromptTemplate prompt_;
  DecodeOptions options_;
};

// Convenience wrappers with default options.
InsertResult insert_paragraphs(const Transcript& transcript, LmClient& lm,
                               const PromptTemplate& prompt);
InsertResult insert_paragraphs_sectionwise(const SegmentedDocument& doc,
                                           LmClient& lm,
                                           const PromptTemplate& prompt);
std::string naive_rewrite(const Transcript& transcript, LmClient& lm,
                          const PromptTemplate& prompt);

}  // namespace paraseg

#endif  // PARASEG_DECODE_H_
