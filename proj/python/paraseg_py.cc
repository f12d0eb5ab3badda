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

// Python bindings for the segmentation toolkit.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paraseg/baselines.h"
#include "paraseg/decode.h"
#include "paraseg/fidelity.h"
#include "paraseg/humaneval.h"
#include "paraseg/ingest.h"
#include "paraseg/metrics.h"
#include "paraseg/senttok.h"

namespace py = pybind11;
using namespace paraseg;

namespace {

BoundaryLabels to_labels(const std::vector<int>& values, Level level,
                         const std::string& doc_id = "doc") {
  BoundaryLabels out{doc_id, level, {}};
  for (int v : values) {
    if (v < 0 || v > 2) throw py::value_error("labels must be 0, 1 or 2");
    out.labels.push_back(static_cast<Label>(v));
  }
  validate(out);
  return out;
}

std::vector<int> from_labels(const BoundaryLabels& l) {
  std::vector<int> out;
  for (Label x : l.labels) out.push_back(static_cast<int>(x));
  return out;
}

Level level_arg(const std::string& name) { return parse_level(name); }

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["pk"] = r.pk;
  d["bs"] = r.boundary_similarity;
  d["k"] = r.k;
  return d;
}

}  // namespace

PYBIND11_MODULE(_paraseg, m) {
  m.doc() = "Paragraph and chapter segmentation of speech transcripts";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "split_sentences",
      [](const std::string& text) { return SentenceTokenizer().split(text); },
      py::arg("text"));

  m.def(
      "parse_plain_text",
      [](const std::string& text) {
        std::vector<std::vector<std::vector<std::string>>> out;
        for (const Chapter& c : parse_plain_text(text).chapters) {
          out.push_back(c.paragraphs);
        }
        return out;
      },
      py::arg("text"));

  m.def(
      "pk",
      [](const std::vector<std::size_t>& ref, const std::vector<std::size_t>& hyp,
         std::optional<std::size_t> k) {
        return pk(ref, hyp,
                  k ? std::optional<PkWindow>(PkWindow(*k)) : std::nullopt);
      },
      py::arg("ref_masses"), py::arg("hyp_masses"), py::arg("k") = py::none());

  m.def(
      "boundary_similarity",
      [](const std::vector<std::size_t>& ref, const std::vector<std::size_t>& hyp,
         std::size_t n_t) {
        return boundary_similarity(ref, hyp, TranspositionWindow(n_t));
      },
      py::arg("ref_masses"), py::arg("hyp_masses"), py::arg("n_t") = 2);

  m.def(
      "evaluate",
      [](const std::vector<int>& ref, const std::vector<int>& hyp,
         const std::string& level) {
        return report_dict(evaluate(to_labels(ref, Level::kHierarchical),
                                    to_labels(hyp, Level::kHierarchical),
                                    level_arg(level)));
      },
      py::arg("ref"), py::arg("hyp"), py::arg("level") = "paragraph");

  m.def(
      "check_fidelity",
      [](const std::string& source, const std::string& output) {
        const FidelityReport r = check_fidelity(source, output);
        py::dict d;
        d["exact"] = r.exact;
        d["whitespace"] = r.whitespace;
        d["punct_case"] = r.punct_case;
        d["length_5pct"] = r.length_5pct;
        d["length_ratio"] = r.length_ratio;
        return d;
      },
      py::arg("source"), py::arg("output"));

  m.def(
      "rule_baseline",
      [](std::size_t sentences, std::size_t period) {
        return from_labels(rule_baseline("doc", sentences, RulePeriod(period)));
      },
      py::arg("sentence_count"), py::arg("period"));

  m.def(
      "random_baseline",
      [](std::size_t sentences, std::size_t breaks, std::uint64_t seed) {
        return from_labels(random_baseline("doc", sentences, breaks, seed));
      },
      py::arg("sentence_count"), py::arg("breaks"), py::arg("seed"));

  m.def(
      "apply_pbr",
      [](const std::vector<int>& labels,
         const std::vector<std::string>& sentences) {
        return from_labels(
            apply_pbr(to_labels(labels, Level::kParagraph), sentences));
      },
      py::arg("labels"), py::arg("sentences"));

  // `score(prompt_messages, candidates) -> {candidate: logprob}`.
  m.def(
      "insert_paragraphs",
      [](const std::vector<std::string>& sentences,
         const std::function<std::map<std::string, double>(
             const std::vector<std::pair<std::string, std::string>>&,
             const std::vector<std::string>&)>& score) {
        FunctionLm lm([&](const LmScoreRequest& req) {
          std::vector<std::pair<std::string, std::string>> msgs;
          for (const Message& msg : req.messages) {
            msgs.emplace_back(msg.role, msg.content);
          }
          py::gil_scoped_acquire gil;
          return LmScoreResponse{score(msgs, req.candidates)};
        });
        const InsertResult r = insert_paragraphs(
            make_transcript("doc", sentences), lm,
            PromptTemplate::paragraph_insertion());
        return py::make_tuple(r.text, from_labels(r.labels), r.lm_calls);
      },
      py::arg("sentences"), py::arg("score"));

  // Judgments as (system_a, system_b, "A" | "B" | "TIE") in play order.
  m.def(
      "compute_elo",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>&
             games,
         double k, double initial) {
        std::vector<Judgment> js;
        for (std::size_t i = 0; i < games.size(); ++i) {
          const auto& [a, b, outcome] = games[i];
          js.push_back({"t" + std::to_string(i), "p", Mode::kAb, "d", {a, b},
                        parse_response(Mode::kAb, outcome),
                        static_cast<std::int64_t>(i)});
        }
        return compute_elo(js, k, initial).ratings;
      },
      py::arg("games"), py::arg("k") = 32.0, py::arg("initial") = 1000.0);
}
