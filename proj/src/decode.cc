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

#include "paraseg/decode.h"

#include <thread>

#include "paraseg/ingest.h"

namespace paraseg {

using nlohmann::json;

namespace {

// Stand-in punctuation for sentences that end without any.
constexpr std::string_view kImplicitPunct = ".";

const char kSystemPrompt[] =
    "You are an AI assistant that helps users insert paragraphs into text.";

const char kUserPrompt[] =
    "You are tasked with inserting paragraphs into a given text. The text "
    "will be provided to you, and your job is to break it up into coherent "
    "paragraphs. Here's the text you'll be working with:\n"
    "\n"
    "{input}\n"
    "\n"
    "Your task is to insert paragraph breaks into this text. A paragraph "
    "break should be signified by two newline characters.\n"
    "\n"
    "A paragraph is a functionally or semantically coherent segment of text. "
    "This means that each paragraph should focus on a single main idea, "
    "topic, or function within the overall text. To identify where to insert "
    "paragraph breaks, consider the following guidelines:\n"
    "\n"
    "1. Look for shifts in topic or focus\n"
    "2. Identify transitions between different ideas or themes\n"
    "3. Recognize changes in time, place, or perspective\n"
    "4. Consider the length of the current segment (very long segments might "
    "benefit from being broken up)\n"
    "5. Pay attention to transitional phrases or words that might signal a "
    "new paragraph\n"
    "\n"
    "Please provide your final output with the inserted paragraph breaks. "
    "Ensure that you maintain the original text exactly as it was given, "
    "only adding the paragraph breaks where appropriate.";

const char kPrefill[] =
    "Here is the segmentation of the video transcription into paragraphs:\n\n";

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool holds_delimiter(std::string_view gap) {
  std::size_t newlines = 0;
  for (char c : gap) newlines += c == '\n';
  return newlines >= 2;
}

// Whitespace between consecutive sentences as it appears in `text`; falls
// back to single spaces when the sentences cannot be located verbatim.
std::vector<std::string> source_gaps(std::string_view text,
                                     const std::vector<Sentence>& sentences) {
  const std::size_t m = sentences.size();
  std::vector<std::string> gaps(m > 0 ? m - 1 : 0, " ");
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t pos = 0;
  for (const Sentence& s : sentences) {
    const std::size_t at = text.find(s.text, pos);
    if (at == std::string_view::npos) return gaps;
    spans.emplace_back(at, at + s.text.size());
    pos = at + s.text.size();
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::string_view gap =
        text.substr(spans[i].second, spans[i + 1].first - spans[i].second);
    const bool blank = gap.find_first_not_of(" \t\r\n\f\v") ==
                       std::string_view::npos;
    if (blank && !gap.empty() && !holds_delimiter(gap)) gaps[i] = gap;
  }
  return gaps;
}

// Runs `call`, retrying transport errors with exponential backoff. The last
// error propagates once the attempts are used up.
template <typename Fn>
auto with_retries(const DecodeOptions& options, Fn&& call) {
  std::chrono::milliseconds backoff = options.retry.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return call();
    } catch (const LmTransportError&) {
      if (attempt >= options.retry.attempts) throw;
    }
    if (options.sleep) {
      options.sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::chrono::milliseconds(static_cast<long long>(
        static_cast<double>(backoff.count()) * options.retry.multiplier));
  }
}

struct Segment {
  std::string doc_id;
  std::string_view text;  // shown to the model
  const std::vector<Sentence>* sentences;
  std::size_t begin = 0;  // first sentence of this segment
  std::size_t end = 0;
  std::size_t boundary_offset = 0;  // global index of the first boundary
};

}  // namespace

void PromptTemplate::validate() const {
  const std::size_t first = user.find(kInputPlaceholder);
  if (first == std::string::npos) {
    throw TemplateError("user prompt has no {input} placeholder");
  }
  if (user.find(kInputPlaceholder, first + 1) != std::string::npos) {
    throw TemplateError("user prompt has more than one {input} placeholder");
  }
  if (!ends_with(prefill, kParagraphDelimiter)) {
    throw TemplateError("assistant prefill must end with the delimiter");
  }
}

PromptTemplate PromptTemplate::from_json(const json& j) {
  PromptTemplate t;
  try {
    t.system = j.at("system").get<std::string>();
    t.user = j.at("user").get<std::string>();
    t.prefill = j.at("prefill").get<std::string>();
  } catch (const json::exception& e) {
    throw TemplateError(std::string("malformed prompt template: ") + e.what());
  }
  t.validate();
  return t;
}

PromptTemplate PromptTemplate::load(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw TemplateError("prompt template '" + path + "': " + e.what());
  }
  return from_json(j);
}

PromptTemplate PromptTemplate::paragraph_insertion() {
  PromptTemplate t{kSystemPrompt, kUserPrompt, kPrefill};
  t.validate();
  return t;
}

std::vector<Message> build_prompt(const PromptTemplate& prompt,
                                  std::string_view transcript_text,
                                  std::string_view output_so_far) {
  prompt.validate();
  std::string user = prompt.user;
  user.replace(user.find(kInputPlaceholder), kInputPlaceholder.size(),
               transcript_text);
  std::string assistant = prompt.prefill;
  assistant += output_so_far;
  return {{"system", prompt.system},
          {"user", std::move(user)},
          {"assistant", std::move(assistant)}};
}

BreakCandidateSet BreakCandidateSet::for_punctuation(std::string_view punct) {
  BreakCandidateSet set;
  set.keep = std::string(punct);
  set.breaks.push_back(set.keep + std::string(kParagraphDelimiter));
  return set;
}

std::vector<std::string> BreakCandidateSet::all() const {
  std::vector<std::string> out{keep};
  out.insert(out.end(), breaks.begin(), breaks.end());
  return out;
}

ConstrainedDecoder::ConstrainedDecoder(LmClient& lm, PromptTemplate prompt,
                                       DecodeOptions options)
    : lm_(lm), prompt_(std::move(prompt)), options_(std::move(options)) {
  prompt_.validate();
  if (options_.retry.attempts < 1) {
    throw ContractError("retry policy needs at least one attempt");
  }
}

BoundaryDecision ConstrainedDecoder::decide_boundary(
    const DecoderState& state, std::string_view transcript_text,
    const std::optional<std::string>& punct, const std::string& doc_id) const {
  std::string_view shortened = state.output;
  if (punct) {
    if (!ends_with(shortened, *punct)) {
      throw ContractError("decoder output does not end with '" + *punct + "'");
    }
    shortened.remove_suffix(punct->size());
  }
  const BreakCandidateSet candidates = BreakCandidateSet::for_punctuation(
      punct ? std::string_view(*punct) : kImplicitPunct);

  LmScoreRequest request;
  request.messages = build_prompt(prompt_, transcript_text, shortened);
  request.candidates = candidates.all();
  request.doc_id = doc_id;
  request.boundary = state.next_index;

  const LmScoreResponse response =
      with_retries(options_, [&] { return lm_.score(request); });
  check_score_response(response, request);

  BoundaryDecision d;
  d.p_keep = response.scores.at(candidates.keep);
  d.token = candidates.breaks.front();
  d.p_break = response.scores.at(d.token);
  for (const std::string& b : candidates.breaks) {
    const double p = response.scores.at(b);
    if (p > d.p_break) {
      d.p_break = p;
      d.token = b;
    }
  }
  // Ties keep the punctuation.
  d.is_break = d.p_break > d.p_keep;
  if (!d.is_break) d.token = candidates.keep;
  return d;
}

namespace {

// Decodes sentences [seg.begin, seg.end) and appends decisions to `labels`.
// Returns the formatted segment and the number of LM calls.
std::pair<std::string, std::size_t> decode_segment(
    const ConstrainedDecoder& decoder, const Segment& seg,
    const DecodeOptions& options, std::vector<Label>& labels,
    const std::vector<std::string>& gaps) {
  const std::vector<Sentence>& sentences = *seg.sentences;
  DecoderState state;
  state.output = sentences[seg.begin].text;
  state.next_index = seg.boundary_offset;
  state.call_count = seg.boundary_offset;
  std::size_t calls = 0;
  for (std::size_t i = seg.begin; i + 1 < seg.end; ++i) {
    const std::optional<std::string>& punct = sentences[i].final_punct;
    const std::size_t boundary = state.next_index;
    bool is_break;
    if (boundary < options.resume.size()) {
      is_break = options.resume[boundary] != Label::kNone;
    } else {
      try {
        is_break =
            decoder.decide_boundary(state, seg.text, punct, seg.doc_id)
                .is_break;
      } catch (const LmTransportError& e) {
        BoundaryLabels partial{seg.doc_id, Level::kParagraph, labels};
        throw DecodeAborted(std::string("decoding aborted at boundary ") +
                                std::to_string(boundary) + ": " + e.what(),
                            std::move(partial), state.output);
      }
      ++calls;
    }
    state.output += is_break ? std::string(kParagraphDelimiter) : gaps[i];
    state.output += sentences[i + 1].text;
    const Label label = is_break ? Label::kPara : Label::kNone;
    state.decisions.push_back(label);
    labels.push_back(label);
    ++state.next_index;
    ++state.call_count;
    if (options.on_decision) options.on_decision(state);
  }
  return {std::move(state.output), calls};
}

}  // namespace

InsertResult ConstrainedDecoder::insert_paragraphs(
    const Transcript& transcript) const {
  if (transcript.sentences.empty()) {
    throw ContractError("transcript '" + transcript.id + "' has no sentences");
  }
  const std::vector<std::string> gaps =
      source_gaps(transcript.text, transcript.sentences);
  Segment seg{transcript.id, transcript.text, &transcript.sentences, 0,
              transcript.sentences.size(), 0};
  InsertResult result;
  result.labels = {transcript.id, Level::kParagraph, {}};
  auto [text, calls] =
      decode_segment(*this, seg, options_, result.labels.labels, gaps);
  result.text = std::move(text);
  result.lm_calls = calls;
  return result;
}

InsertResult ConstrainedDecoder::insert_paragraphs_sectionwise(
    const SegmentedDocument& doc) const {
  if (!doc.chapters) {
    throw ContractError("document '" + doc.transcript.id +
                        "' has no chapters");
  }
  const Transcript& t = doc.transcript;
  const std::vector<std::string> gaps = source_gaps(t.text, t.sentences);
  InsertResult result;
  result.labels = {t.id, Level::kHierarchical, {}};
  std::vector<Label>& labels = result.labels.labels;
  for (std::size_t c = 0; c < doc.chapters->size(); ++c) {
    const SentenceRange range = (*doc.chapters)[c].range;
    if (range.begin >= range.end || range.end > t.sentences.size()) {
      throw ContractError("chapter span outside document '" + t.id + "'");
    }
    if (c > 0) {
      labels.push_back(Label::kChap);
      result.text += kParagraphDelimiter;
    }
    // The model sees only this chapter's text.
    std::string chapter_text;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      if (i > range.begin) chapter_text += gaps[i - 1];
      chapter_text += t.sentences[i].text;
    }
    Segment seg{t.id, chapter_text, &t.sentences, range.begin, range.end,
                range.begin};
    try {
      auto [text, calls] = decode_segment(*this, seg, options_, labels, gaps);
      result.text += text;
      result.lm_calls += calls;
    } catch (const DecodeAborted& e) {
      BoundaryLabels partial{t.id, Level::kHierarchical, labels};
      throw DecodeAborted(e.what(), std::move(partial),
                          result.text + e.partial_output());
    }
  }
  return result;
}

std::string ConstrainedDecoder::naive_rewrite(const Transcript& transcript,
                                              std::size_t max_tokens) const {
  LmGenerateRequest request;
  request.messages = build_prompt(prompt_, transcript.text, "");
  request.max_tokens = max_tokens;
  request.doc_id = transcript.id;
  return with_retries(options_, [&] { return lm_.generate(request); });
}

InsertResult insert_paragraphs(const Transcript& transcript, LmClient& lm,
                               const PromptTemplate& prompt) {
  return ConstrainedDecoder(lm, prompt).insert_paragraphs(transcript);
}

InsertResult insert_paragraphs_sectionwise(const SegmentedDocument& doc,
                                           LmClient& lm,
                                           const PromptTemplate& prompt) {
  return ConstrainedDecoder(lm, prompt).insert_paragraphs_sectionwise(doc);
}

std::string naive_rewrite(const Transcript& transcript, LmClient& lm,
                          const PromptTemplate& prompt) {
  return ConstrainedDecoder(lm, prompt).naive_rewrite(transcript);
}

}  // namespace paraseg
