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

// paraseg command line tool.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 invalid input data, 5 language
// model failure, 6 anything else.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "paraseg/baselines.h"
#include "paraseg/decode.h"
#include "paraseg/fidelity.h"
#include "paraseg/humaneval.h"
#include "paraseg/ingest.h"
#include "paraseg/lm.h"
#include "paraseg/metrics.h"
#include "paraseg/senttok.h"
#include "paraseg/service.h"

namespace {

using nlohmann::json;
using namespace paraseg;

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kInvalid = 4,
  kModel = 5,
  kOther = 6,
};

// Thrown for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

bool is_jsonl(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

std::string stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return read_file(path);
}

// Output sink: a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void flush() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

// Streams the records of a dataset file, or the single record parsed from a
// plain-text file.
void for_each_record(const std::string& path, const SentenceTokenizer& tok,
                     const std::function<void(DatasetRecord)>& fn) {
  if (is_jsonl(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    for_each_jsonl(in, [&](const json& j, std::size_t) {
      fn(dataset_record_from_json(j));
    });
    return;
  }
  const std::string id = path == "-" ? "stdin" : stem(path);
  fn(parse_plain_text(read_input(path), id, tok));
}

SentenceTokenizer make_tokenizer(const std::string& abbreviations) {
  if (abbreviations.empty()) return SentenceTokenizer();
  return SentenceTokenizer(AbbreviationList::load(abbreviations));
}

// Labels keyed by document id, from either a labels file or a dataset
// (gold labels).
struct LabelSource {
  std::vector<std::string> order;
  std::map<std::string, BoundaryLabels> labels;
  std::map<std::string, std::vector<SentenceRange>> chapters;  // datasets only
};

LabelSource load_labels(const std::string& path) {
  LabelSource src;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  for_each_jsonl(in, [&](const json& j, std::size_t line) {
    const std::string id = j.value("id", "");
    if (src.labels.count(id)) {
      throw ParseError("line " + std::to_string(line) + ": duplicate id '" +
                           id + "'",
                       line, id);
    }
    if (j.contains("chapters")) {
      const DatasetRecord r = dataset_record_from_json(j);
      const SegmentedDocument doc = record_document(r);
      src.labels[id] = *doc.gold;
      std::vector<SentenceRange> ranges;
      for (const ChapterSpan& c : *doc.chapters) ranges.push_back(c.range);
      src.chapters[id] = std::move(ranges);
    } else {
      src.labels[id] = labels_entry_from_json(j).labels;
    }
    src.order.push_back(id);
  });
  return src;
}

std::uint64_t document_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over (seed, index).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string abbreviations;
  std::string split;
};

int run_ingest(const IngestArgs& a) {
  const SentenceTokenizer tok = make_tokenizer(a.abbreviations);
  Output out(a.output);
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const std::string& path : a.inputs) {
    for_each_record(path, tok, [&](DatasetRecord r) {
      if (!seen.insert(r.id).second) {
        throw ValidationError("duplicate record id '" + r.id + "'");
      }
      ids.push_back(r.id);
      out.stream() << to_json(r).dump() << '\n';
    });
  }
  out.flush();
  if (!a.split.empty()) validate(read_split_manifest(a.split), ids);
  return kOk;
}

// -------------------------------------------------------------- tokenize

struct TokenizeArgs {
  std::string input = "-";
  std::string abbreviations;
  std::string format = "text";
};

int run_tokenize(const TokenizeArgs& a) {
  const SentenceTokenizer tok = make_tokenizer(a.abbreviations);
  const std::vector<std::string> sentences = tok.split(read_input(a.input));
  if (a.format == "json") {
    std::cout << json(sentences).dump() << '\n';
  } else {
    for (const std::string& s : sentences) std::cout << s << '\n';
  }
  return kOk;
}

// --------------------------------------------------------------- segment

struct SegmentArgs {
  std::string input;
  std::string lm_url;
  std::string mock;
  std::string prompt;
  std::string method = "constrained";
  bool sectionwise = false;
  std::string output;
  std::string labels;
  std::string resume;
  std::size_t jobs = 1;
  int attempts = 3;
  std::string abbreviations;
};

struct SegmentJob {
  DatasetRecord record;
  std::vector<Label> resume;
};

struct SegmentOutcome {
  std::string id;
  std::string text;
  std::optional<BoundaryLabels> labels;
  std::size_t lm_calls = 0;
  bool partial = false;
  std::string error;
};

SegmentOutcome segment_one(const SegmentJob& job, LmClient& lm,
                           const PromptTemplate& prompt,
                           const SegmentArgs& a) {
  SegmentOutcome out;
  out.id = job.record.id;
  DecodeOptions options;
  options.retry.attempts = a.attempts;
  options.resume = job.resume;
  const ConstrainedDecoder decoder(lm, prompt, options);
  if (a.method == "naive") {
    out.text = decoder.naive_rewrite(record_transcript(job.record));
    return out;
  }
  try {
    InsertResult r;
    if (a.sectionwise) {
      SegmentedDocument doc = record_document(job.record);
      doc.gold.reset();
      r = decoder.insert_paragraphs_sectionwise(doc);
    } else {
      r = decoder.insert_paragraphs(record_transcript(job.record));
    }
    out.text = std::move(r.text);
    out.labels = std::move(r.labels);
    out.lm_calls = r.lm_calls;
  } catch (const DecodeAborted& e) {
    out.text = e.partial_output();
    out.labels = e.partial();
    out.partial = true;
    out.error = e.what();
  }
  return out;
}

int run_segment(const SegmentArgs& a) {
  if (a.method != "constrained" && a.method != "naive") {
    throw UsageError("--method must be constrained or naive");
  }
  if (a.method == "naive" && (a.sectionwise || !a.resume.empty())) {
    throw UsageError("--sectionwise and --resume need constrained decoding");
  }
  const std::string url = a.lm_url.empty() ? env_or("PARASEG_LM_URL", "")
                                           : a.lm_url;
  std::unique_ptr<LmClient> lm;
  if (!a.mock.empty()) {
    lm = ScriptedLm::load(a.mock);
  } else if (!url.empty()) {
    lm = std::make_unique<HttpLmClient>(url);
  } else {
    throw UsageError("no language model: pass --lm, --mock or PARASEG_LM_URL");
  }
  const PromptTemplate prompt = a.prompt.empty()
                                    ? PromptTemplate::paragraph_insertion()
                                    : PromptTemplate::load(a.prompt);

  std::map<std::string, std::vector<Label>> resume;
  if (!a.resume.empty()) {
    for (LabelsEntry& e : read_labels_file(a.resume)) {
      resume[e.labels.doc_id] = std::move(e.labels.labels);
    }
  }

  const bool dataset = is_jsonl(a.input);
  Output text_out(a.output);
  std::unique_ptr<Output> labels_out;
  if (!a.labels.empty()) labels_out = std::make_unique<Output>(a.labels);

  int status = kOk;
  std::vector<SegmentJob> batch;
  const std::size_t jobs = std::max<std::size_t>(1, a.jobs);
  auto flush_batch = [&] {
    std::vector<std::future<SegmentOutcome>> futures;
    for (const SegmentJob& job : batch) {
      futures.push_back(std::async(std::launch::async, [&, job_ptr = &job] {
        return segment_one(*job_ptr, *lm, prompt, a);
      }));
    }
    for (auto& f : futures) {
      SegmentOutcome o = f.get();
      if (dataset) {
        json line = {{"id", o.id}, {"text", o.text}};
        if (a.method == "constrained") line["lm_calls"] = o.lm_calls;
        if (o.partial) line["partial"] = true;
        text_out.stream() << line.dump() << '\n';
      } else {
        text_out.stream() << o.text << '\n';
      }
      if (labels_out && o.labels) {
        const json meta =
            o.partial ? json{{"partial", true}} : json(nullptr);
        labels_out->stream() << labels_to_json(*o.labels, meta).dump() << '\n';
      }
      if (o.partial) {
        std::cerr << "paraseg: " << o.error << '\n';
        status = kModel;
      }
    }
    text_out.flush();
    if (labels_out) labels_out->flush();
    batch.clear();
  };

  const SentenceTokenizer tok = make_tokenizer(a.abbreviations);
  for_each_record(a.input, tok, [&](DatasetRecord r) {
    SegmentJob job;
    auto it = resume.find(r.id);
    if (it != resume.end()) job.resume = it->second;
    job.record = std::move(r);
    batch.push_back(std::move(job));
    if (batch.size() >= jobs) flush_batch();
  });
  if (!batch.empty()) flush_batch();
  if (status == kModel && labels_out) {
    std::cerr << "paraseg: rerun with --resume " << a.labels
              << " to continue from the saved decisions\n";
  }
  return status;
}

// -------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string ref;
  std::string hyp;
  std::string level = "paragraph";
  bool within_chapters = false;
  std::size_t n_t = TranspositionWindow::kDefault;
  std::string format = "table";
  bool per_document = false;
};

int run_evaluate(const EvaluateArgs& a) {
  const LabelSource ref = load_labels(a.ref);
  const LabelSource hyp = load_labels(a.hyp);
  const Level level = parse_level(a.level);
  if (level == Level::kHierarchical) {
    throw UsageError("--level must be paragraph or chapter");
  }
  std::vector<LabelPair> pairs;
  std::vector<std::vector<SentenceRange>> chapters;
  for (const std::string& id : ref.order) {
    auto it = hyp.labels.find(id);
    if (it == hyp.labels.end()) {
      throw ValidationError("hypothesis has no labels for '" + id + "'");
    }
    if (it->second.sentence_count() != ref.labels.at(id).sentence_count()) {
      throw ValidationError("sentence counts differ for '" + id + "'");
    }
    pairs.push_back({ref.labels.at(id), it->second});
    if (a.within_chapters) {
      auto c = ref.chapters.find(id);
      if (c == ref.chapters.end()) {
        throw UsageError("--within-chapters needs a dataset as --ref");
      }
      chapters.push_back(c->second);
    }
  }
  if (hyp.order.size() != ref.order.size()) {
    throw ValidationError("hypothesis has documents missing from reference");
  }
  const TranspositionWindow n_t(a.n_t);
  const CorpusReport report =
      a.within_chapters ? evaluate_within_chapters(pairs, chapters, n_t)
                        : evaluate_corpus(pairs, level, n_t);
  if (a.format == "json") {
    json j = to_json(report);
    if (!a.per_document) j.erase("documents");
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << format_table(report, a.per_document);
  }
  return kOk;
}

// -------------------------------------------------------------- baseline

struct BaselineArgs {
  std::string input;
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t period = 0;
  std::string period_from;
  double tau = 0.5;
  std::string scores;
  std::string labels;
  std::string cues;
  double rate = -1.0;
  std::string output;
  std::string abbreviations;
};

int run_baseline(const BaselineArgs& a) {
  static const std::set<std::string> kKinds = {"random", "rule", "pbr",
                                               "threshold", "hrandom"};
  if (!kKinds.count(a.kind)) {
    throw UsageError("--kind must be one of random, rule, pbr, threshold, "
                     "hrandom");
  }
  const SentenceTokenizer tok = make_tokenizer(a.abbreviations);

  std::optional<RulePeriod> period;
  if (a.kind == "rule") {
    if (a.period > 0) {
      period = RulePeriod(a.period);
    } else if (!a.period_from.empty()) {
      period = mean_paragraph_length(read_jsonl_dataset(a.period_from)).period;
    } else {
      throw UsageError("rule baseline needs --period or --period-from");
    }
  }
  std::map<std::string, ScoreEntry> scores;
  if (a.kind == "threshold") {
    if (a.scores.empty()) throw UsageError("threshold baseline needs --scores");
    for (ScoreEntry& e : read_score_file(a.scores)) {
      scores[e.id] = std::move(e);
    }
  }
  std::map<std::string, BoundaryLabels> hyp;
  if (a.kind == "pbr") {
    if (a.labels.empty()) throw UsageError("pbr needs --labels to post-process");
    for (LabelsEntry& e : read_labels_file(a.labels)) {
      hyp[e.labels.doc_id] = std::move(e.labels);
    }
  }
  const CueLexicon cues = a.cues.empty() ? CueLexicon() : CueLexicon::load(a.cues);

  double rate = a.rate;
  std::vector<DatasetRecord> records;
  for_each_record(a.input, tok, [&](DatasetRecord r) {
    records.push_back(std::move(r));
  });
  if (a.kind == "hrandom" && rate < 0.0) {
    std::vector<BoundaryLabels> gold;
    for (const DatasetRecord& r : records) gold.push_back(gold_labels(r));
    rate = paragraph_break_rate(gold);
  }

  Output out(a.output);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DatasetRecord& r = records[i];
    const std::size_t m = r.sentence_count();
    const BoundaryLabels gold = gold_labels(r);
    BoundaryLabels labels;
    json meta = {{"baseline", a.kind}};
    if (a.kind == "random") {
      const std::uint64_t seed = document_seed(a.seed, i);
      labels = random_baseline(r.id, m, gold.break_count(Level::kParagraph),
                               seed);
      meta["seed"] = a.seed;
      meta["rng"] = Rng::kAlgorithm;
    } else if (a.kind == "rule") {
      labels = rule_baseline(r.id, m, *period);
      meta["period"] = period->value();
    } else if (a.kind == "threshold") {
      auto it = scores.find(r.id);
      if (it == scores.end()) {
        throw ValidationError("no scores for '" + r.id + "'");
      }
      validate(it->second, m);
      labels = apply_threshold(it->second, Threshold(a.tau));
      meta["tau"] = a.tau;
    } else if (a.kind == "pbr") {
      auto it = hyp.find(r.id);
      if (it == hyp.end()) {
        throw ValidationError("no labels for '" + r.id + "'");
      }
      if (it->second.sentence_count() != m) {
        throw ValidationError("labels for '" + r.id +
                              "' do not match its sentence count");
      }
      labels = apply_pbr(it->second, r.sentences(), cues);
    } else {
      const std::size_t chapters = r.chapters.size();
      const std::uint64_t seed = document_seed(a.seed, i);
      labels = hierarchical_random(r.id, m, chapters, rate, seed);
      meta["seed"] = a.seed;
      meta["rate"] = rate;
      meta["rng"] = Rng::kAlgorithm;
    }
    out.stream() << labels_to_json(labels, meta).dump() << '\n';
  }
  out.flush();
  return kOk;
}

// -------------------------------------------------------------- fidelity

struct FidelityArgs {
  std::string source;
  std::string output;
  std::string system = "system";
  std::string format = "table";
  bool per_document = false;
};

int run_fidelity(const FidelityArgs& a) {
  if (!is_jsonl(a.source)) {
    const FidelityReport r =
        check_fidelity(read_input(a.source), read_input(a.output));
    if (a.format == "json") {
      std::cout << to_json(r).dump(2) << '\n';
    } else {
      std::cout << format_table(a.system, fidelity_table({r}));
    }
    return kOk;
  }
  std::map<std::string, std::string> texts;
  {
    std::ifstream in(a.output, std::ios::binary);
    if (!in) throw IoError("cannot open '" + a.output + "'");
    for_each_jsonl(in, [&](const json& j, std::size_t line) {
      if (!j.contains("id") || !j.contains("text") || !j["text"].is_string()) {
        throw ParseError(
            "line " + std::to_string(line) + ": output needs id and text",
            line);
      }
      texts[j["id"].get<std::string>()] = j["text"].get<std::string>();
    });
  }
  std::vector<FidelityReport> reports;
  json docs = json::array();
  for_each_record(a.source, SentenceTokenizer(), [&](DatasetRecord r) {
    auto it = texts.find(r.id);
    if (it == texts.end()) {
      throw ValidationError("no output text for '" + r.id + "'");
    }
    reports.push_back(check_fidelity(record_transcript(r).text, it->second));
    json d = to_json(reports.back());
    d["id"] = r.id;
    docs.push_back(std::move(d));
  });
  const FidelityTable table = fidelity_table(reports);
  if (a.format == "json") {
    json j = to_json(table);
    j["system"] = a.system;
    if (a.per_document) j["documents"] = docs;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << format_table(a.system, table);
  }
  return kOk;
}

// -------------------------------------------------------- tune-threshold

struct TuneArgs {
  std::string scores;
  std::string gold;
  std::string split;
  std::string partition;
};

int run_tune(const TuneArgs& a) {
  std::map<std::string, ScoreEntry> scores;
  for (ScoreEntry& e : read_score_file(a.scores)) {
    scores[e.id] = std::move(e);
  }
  std::optional<std::set<std::string>> keep;
  std::vector<std::string> all_ids;
  std::vector<DatasetRecord> records = read_jsonl_dataset(a.gold);
  for (const DatasetRecord& r : records) all_ids.push_back(r.id);
  if (!a.split.empty()) {
    const SplitManifest manifest = read_split_manifest(a.split);
    validate(manifest, all_ids);
    auto it = manifest.find(a.partition);
    if (it == manifest.end()) {
      throw ValidationError("split has no partition '" + a.partition + "'");
    }
    keep.emplace(it->second.begin(), it->second.end());
  } else if (!a.partition.empty()) {
    throw UsageError("--partition needs --split");
  }
  std::vector<ScoredDocument> corpus;
  for (const DatasetRecord& r : records) {
    if (keep && !keep->count(r.id)) continue;
    auto it = scores.find(r.id);
    if (it == scores.end()) {
      throw ValidationError("no scores for '" + r.id + "'");
    }
    validate(it->second, r.sentence_count());
    BoundaryLabels gold = project_hierarchical(gold_labels(r), it->second.level);
    corpus.push_back({it->second, std::move(gold)});
  }
  const TuningResult t = tune_threshold(corpus);
  std::cout << json{{"tau", t.tau.value()},
                    {"f1", t.f1},
                    {"candidates", t.candidates},
                    {"documents", corpus.size()}}
                   .dump(2)
            << '\n';
  return kOk;
}

// --------------------------------------------------------------- results

struct ResultsArgs {
  std::string which;
  std::string store;
  std::string format = "json";
};

int run_results(const ResultsArgs& a) {
  const std::string path =
      a.store.empty() ? env_or("PARASEG_STORE", "") : a.store;
  if (path.empty()) throw UsageError("no judgment store: pass --store");
  if (!std::filesystem::exists(path)) {
    throw IoError("judgment store '" + path + "' does not exist");
  }
  JudgmentStore store(path);
  json table;
  if (a.which == "elo") {
    table = elo_table(compute_elo(judgments_of_mode(store.judgments(), Mode::kAb)));
  } else {
    const auto likert = judgments_of_mode(store.judgments(), Mode::kLikert);
    table = likert.empty() ? json{{"systems", json::array()}}
                           : likert_table(compute_likert(likert));
  }
  if (a.format == "json") {
    std::cout << table.dump(2) << '\n';
    return kOk;
  }
  for (const json& row : table["systems"]) {
    std::ostringstream line;
    line << row["system"].get<std::string>();
    if (a.which == "elo") {
      line << '\t' << row["rating"].get<double>();
    } else {
      line << '\t' << row["mean"].get<double>() << '\t'
           << row["std"].get<double>();
    }
    line << '\t' << row["n"].get<std::size_t>();
    std::cout << line.str() << '\n';
  }
  return kOk;
}

// ----------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store;
  std::string documents;
  std::string systems;
  std::uint64_t seed = 0;
  long timeout_s = 1800;
  std::string cors_origin = "*";
  std::string static_dir;
};

int run_serve(const ServeArgs& a) {
  const std::string path =
      a.store.empty() ? env_or("PARASEG_STORE", "") : a.store;
  if (path.empty()) throw UsageError("no judgment store: pass --store");
  StudyMaterials materials = load_study_materials(a.documents, a.systems);
  JudgmentStore store(path);
  Study study(study_config(materials, a.seed, std::chrono::seconds(a.timeout_s)),
              store);
  AnnotationService service(std::move(materials), study, a.cors_origin);
  httplib::Server server;
  service.mount(server);
  if (!a.static_dir.empty() && !server.set_mount_point("/", a.static_dir)) {
    throw IoError("cannot serve '" + a.static_dir + "'");
  }
  std::cerr << "paraseg: serving on http://" << a.host << ':' << a.port
            << '\n';
  if (!server.listen(a.host, a.port)) {
    throw IoError("cannot listen on " + a.host + ":" + std::to_string(a.port));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paragraph and chapter segmentation of speech transcripts."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "paraseg 0.1.0");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand(
      "ingest", "Convert plain-text transcripts or datasets to canonical JSONL");
  c_ingest->add_option("inputs", ingest.inputs, "Text or JSONL files")
      ->required();
  c_ingest->add_option("-o,--output", ingest.output, "Output path");
  c_ingest->add_option("--abbreviations", ingest.abbreviations,
                       "Abbreviation list");
  c_ingest->add_option("--split", ingest.split,
                       "Split manifest to validate against the records");

  TokenizeArgs tokenize;
  auto* c_tok = app.add_subcommand("tokenize", "Split text into sentences");
  c_tok->add_option("input", tokenize.input, "Text file, or - for stdin");
  c_tok->add_option("--abbreviations", tokenize.abbreviations);
  c_tok->add_option("--format", tokenize.format)
      ->check(CLI::IsMember({"text", "json"}));

  SegmentArgs segment;
  auto* c_seg = app.add_subcommand(
      "segment", "Insert paragraph breaks with a language model");
  c_seg->add_option("input", segment.input, "Text file or JSONL dataset")
      ->required();
  c_seg->add_option("--lm", segment.lm_url,
                    "LM server base URL (default: $PARASEG_LM_URL)");
  c_seg->add_option("--mock", segment.mock, "Scripted mock LM policy");
  c_seg->add_option("--template", segment.prompt, "Prompt template JSON");
  c_seg->add_option("--method", segment.method)
      ->check(CLI::IsMember({"constrained", "naive"}));
  c_seg->add_flag("--sectionwise", segment.sectionwise,
                  "Decode each chapter on its own");
  c_seg->add_option("-o,--output", segment.output, "Formatted text output");
  c_seg->add_option("--labels", segment.labels, "Labels JSONL output");
  c_seg->add_option("--resume", segment.resume,
                    "Labels JSONL of an interrupted run");
  c_seg->add_option("-j,--jobs", segment.jobs, "Documents decoded in parallel")
      ->check(CLI::PositiveNumber);
  c_seg->add_option("--attempts", segment.attempts, "LM attempts per query")
      ->check(CLI::PositiveNumber);
  c_seg->add_option("--abbreviations", segment.abbreviations);

  EvaluateArgs evaluate;
  auto* c_eval =
      app.add_subcommand("evaluate", "Score segmentations against a reference");
  c_eval->add_option("--ref", evaluate.ref, "Reference dataset or labels")
      ->required();
  c_eval->add_option("--hyp", evaluate.hyp, "Hypothesis labels")
      ->required();
  c_eval->add_option("--level", evaluate.level)
      ->check(CLI::IsMember({"paragraph", "chapter"}));
  c_eval->add_flag("--within-chapters", evaluate.within_chapters,
                   "Score paragraphs inside the reference chapters");
  c_eval->add_option("--nt", evaluate.n_t, "Transposition window")
      ->check(CLI::Range(2, 1000));
  c_eval->add_option("--format", evaluate.format)
      ->check(CLI::IsMember({"table", "json"}));
  c_eval->add_flag("--per-document", evaluate.per_document);

  BaselineArgs baseline;
  auto* c_base = app.add_subcommand("baseline", "Run a reference segmenter");
  c_base->add_option("input", baseline.input, "Text file or JSONL dataset")
      ->required();
  c_base->add_option("--kind", baseline.kind)
      ->required()
      ->check(CLI::IsMember({"random", "rule", "pbr", "threshold", "hrandom"}));
  c_base->add_option("--seed", baseline.seed);
  c_base->add_option("--period", baseline.period)->check(CLI::PositiveNumber);
  c_base->add_option("--period-from", baseline.period_from,
                     "Dataset whose mean paragraph length sets the period");
  c_base->add_option("--tau", baseline.tau)->check(CLI::Range(0.0, 1.0));
  c_base->add_option("--scores", baseline.scores);
  c_base->add_option("--labels", baseline.labels, "Labels to post-process");
  c_base->add_option("--cues", baseline.cues, "Cue lexicon");
  c_base->add_option("--rate", baseline.rate,
                     "Paragraph rate for hrandom (default: from gold)")
      ->check(CLI::Range(0.0, 1.0));
  c_base->add_option("-o,--output", baseline.output);
  c_base->add_option("--abbreviations", baseline.abbreviations);

  FidelityArgs fidelity;
  auto* c_fid = app.add_subcommand(
      "fidelity", "Check formatted outputs against their sources");
  c_fid->add_option("--source", fidelity.source, "Source text or dataset")
      ->required();
  c_fid->add_option("--output", fidelity.output, "Formatted text or JSONL")
      ->required();
  c_fid->add_option("--system", fidelity.system, "Row label");
  c_fid->add_option("--format", fidelity.format)
      ->check(CLI::IsMember({"table", "json"}));
  c_fid->add_flag("--per-document", fidelity.per_document);

  TuneArgs tune;
  auto* c_tune = app.add_subcommand(
      "tune-threshold", "Pick the break threshold maximizing F1");
  c_tune->add_option("--scores", tune.scores)->required();
  c_tune->add_option("--gold", tune.gold, "Reference dataset")
      ->required();
  c_tune->add_option("--split", tune.split);
  c_tune->add_option("--partition", tune.partition);

  ResultsArgs results;
  auto* c_res = app.add_subcommand("results", "Aggregate human judgments");
  c_res->add_option("which", results.which)
      ->required()
      ->check(CLI::IsMember({"elo", "likert"}));
  c_res->add_option("--store", results.store,
                    "Judgment store (default: $PARASEG_STORE)");
  c_res->add_option("--format", results.format)
      ->check(CLI::IsMember({"json", "table"}));

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Run the annotation service");
  c_serve->add_option("--host", serve.host);
  c_serve->add_option("--port", serve.port)->check(CLI::Range(1, 65535));
  c_serve->add_option("--store", serve.store,
                      "Judgment store (default: $PARASEG_STORE)");
  c_serve->add_option("--documents", serve.documents, "Dataset JSONL")
      ->required();
  c_serve->add_option("--systems", serve.systems, "Systems manifest JSON")
      ->required();
  c_serve->add_option("--seed", serve.seed);
  c_serve->add_option("--trial-timeout", serve.timeout_s, "Seconds")
      ->check(CLI::PositiveNumber);
  c_serve->add_option("--cors-origin", serve.cors_origin);
  c_serve->add_option("--static", serve.static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_ingest) return run_ingest(ingest);
    if (*c_tok) return run_tokenize(tokenize);
    if (*c_seg) return run_segment(segment);
    if (*c_eval) return run_evaluate(evaluate);
    if (*c_base) return run_baseline(baseline);
    if (*c_fid) return run_fidelity(fidelity);
    if (*c_tune) return run_tune(tune);
    if (*c_res) return run_results(results);
    if (*c_serve) return run_serve(serve);
  } catch (const UsageError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "paraseg: invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const TemplateError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kInvalid;
  } catch (const ContractError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kInvalid;
  } catch (const LmTransportError& e) {
    std::cerr << "paraseg: language model unreachable: " << e.what() << '\n';
    return kModel;
  } catch (const LmProtocolError& e) {
    std::cerr << "paraseg: language model error: " << e.what() << '\n';
    return kModel;
  } catch (const ContextLengthError& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kModel;
  } catch (const std::exception& e) {
    std::cerr << "paraseg: " << e.what() << '\n';
    return kOther;
  }
  return kUsage;
}
