// src/pipeline.cc

// Copyright 2026  The talkalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "talkalign/pipeline.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "talkalign/errors.h"
#include "talkalign/text.h"

namespace talkalign {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config

void PipelineConfig::Validate() const {
  try {
    params.Validate();
  } catch (const Error &e) {
    throw Error(ErrorKind::kUsage, e.what());
  }
  if (budget_modes.empty()) throw Error(ErrorKind::kUsage, "at least one budget mode is required");
  for (const auto &m : budget_modes) m.Validate();
  if (parallelism < 1) throw Error(ErrorKind::kUsage, "parallelism must be at least 1");
  if (!(redundancy_threshold >= 0.0 && redundancy_threshold <= 1.0)) {
    throw Error(ErrorKind::kUsage, "redundancy_threshold must lie in [0, 1]");
  }
}

namespace {

json ModeToJson(const BudgetMode &m) {
  switch (m.kind) {
    case BudgetMode::Kind::kFixedWords: return {{"words", m.words}};
    case BudgetMode::Kind::kRatio: return {{"ratio", m.ratio}};
    case BudgetMode::Kind::kTopN: return {{"top_n", m.top_n}};
  }
  return {};
}

BudgetMode ModeFromJson(const json &j) {
  if (!j.is_object() || j.size() != 1) {
    throw Error(ErrorKind::kFormat, "budget mode must be one of {words|ratio|top_n: value}");
  }
  if (j.contains("words")) return BudgetMode::FixedWords(j.at("words").get<std::size_t>());
  if (j.contains("ratio")) return BudgetMode::Ratio(j.at("ratio").get<double>());
  if (j.contains("top_n")) return BudgetMode::TopN(j.at("top_n").get<std::size_t>());
  throw Error(ErrorKind::kFormat, "unknown budget mode " + j.dump());
}

json ConfigJson(const PipelineConfig &c, bool with_parallelism) {
  json params = {{"lambda", c.params.lambda},
                 {"gamma", c.params.gamma},
                 {"delta", c.params.delta},
                 {"epsilon", c.params.epsilon},
                 {"alpha_override", nullptr}};
  if (c.params.alpha_override) params["alpha_override"] = *c.params.alpha_override;
  json modes = json::array();
  for (const auto &m : c.budget_modes) modes.push_back(ModeToJson(m));
  json j = {{"params", params},
            {"remove_stopwords", c.remove_stopwords},
            {"similarity_kind", std::string(SimilarityKindName(c.similarity_kind))},
            {"emission_normalize", c.emission_normalize},
            {"budget_modes", modes},
            {"hybrid", c.hybrid},
            {"redundancy_threshold", c.redundancy_threshold},
            {"embeddings_path", c.embeddings_path},
            {"decoder", c.decoder == DecoderKind::kFast ? "fast" : "reference"}};
  if (with_parallelism) j["parallelism"] = c.parallelism;
  return j;
}

template <typename T>
void ReadIf(const json &j, const char *key, T &out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

PipelineConfig ParseConfig(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kFormat,
                "config JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::kFormat, "config: top level is not an object");
  PipelineConfig c;
  try {
    if (auto p = root.find("params"); p != root.end()) {
      ReadIf(*p, "lambda", c.params.lambda);
      ReadIf(*p, "gamma", c.params.gamma);
      ReadIf(*p, "delta", c.params.delta);
      ReadIf(*p, "epsilon", c.params.epsilon);
      if (auto a = p->find("alpha_override"); a != p->end() && !a->is_null()) {
        c.params.alpha_override = a->get<double>();
      }
    }
    ReadIf(root, "remove_stopwords", c.remove_stopwords);
    if (auto s = root.find("similarity_kind"); s != root.end()) {
      auto kind = ParseSimilarityKind(s->get<std::string>());
      if (!kind) throw Error(ErrorKind::kFormat, "config: unknown similarity_kind " + s->dump());
      c.similarity_kind = *kind;
    }
    ReadIf(root, "emission_normalize", c.emission_normalize);
    if (auto m = root.find("budget_modes"); m != root.end()) {
      c.budget_modes.clear();
      for (const auto &entry : *m) c.budget_modes.push_back(ModeFromJson(entry));
    }
    ReadIf(root, "hybrid", c.hybrid);
    ReadIf(root, "redundancy_threshold", c.redundancy_threshold);
    ReadIf(root, "embeddings_path", c.embeddings_path);
    ReadIf(root, "parallelism", c.parallelism);
    if (auto d = root.find("decoder"); d != root.end()) {
      const auto name = d->get<std::string>();
      if (name == "fast") {
        c.decoder = DecoderKind::kFast;
      } else if (name == "reference") {
        c.decoder = DecoderKind::kReference;
      } else {
        throw Error(ErrorKind::kFormat, "config: unknown decoder \"" + name + "\"");
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("config: ") + e.what());
  }
  return c;
}

std::string ConfigToJson(const PipelineConfig &config) {
  return ConfigJson(config, true).dump(2) + "\n";
}

std::string ConfigHash(const PipelineConfig &config) {
  const std::string canonical = ConfigJson(config, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Files

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  return ss.str();
}

void WriteFile(const fs::path &path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Alignment

AlignedDocument AlignDocument(std::string_view paper_json, std::string_view transcript_input,
                              const EmbeddingTable &table, const PipelineConfig &config) {
  AlignedDocument out;
  out.doc = CleanPaper(ParsePaper(paper_json));
  out.space = BuildStateSpace(out.doc);
  out.transcript =
      DropOov(ParseTranscript(transcript_input, {.remove_stopwords = config.remove_stopwords}), table);
  if (out.transcript.size() == 0) {
    throw Error(ErrorKind::kEmptyTranscript, "every transcript token is out of vocabulary");
  }
  out.transitions = BuildTransition(out.space, out.transcript.size(), config.params);
  const EmissionMatrix emissions =
      BuildEmission(out.space, out.doc, out.transcript, table,
                    {.similarity = config.similarity_kind, .normalize = config.emission_normalize});
  const std::vector<double> start = StartLogDistribution(out.space);
  out.result = config.decoder == DecoderKind::kFast
                   ? ViterbiFast(emissions, out.transitions, start, out.transcript)
                   : Viterbi(emissions, out.transitions, start, out.transcript);
  return out;
}

std::string AlignmentToJson(const AlignedDocument &aligned) {
  const auto &r = aligned.result;
  json path = json::array();
  for (std::size_t t = 0; t < r.path.size(); ++t) {
    path.push_back({{"t", t},
                    {"token", aligned.transcript.tokens[t].surface},
                    {"state", r.path[t]},
                    {"sentence_id", aligned.space.states[r.path[t]]}});
  }
  json counts = json::array();
  for (const auto &c : r.counts) counts.push_back({{"sentence_id", c.sentence_id}, {"count", c.count}});
  json j = {{"log_prob", r.log_prob}, {"dropped_oov", r.dropped_oov}, {"path", path}, {"counts", counts}};
  return j.dump(1) + "\n";
}

namespace {

std::string OneLine(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

std::string IntervalReport(const AlignedDocument &aligned) {
  const auto &path = aligned.result.path;
  std::string out;
  std::size_t first = 0;
  for (std::size_t t = 1; t <= path.size(); ++t) {
    if (t < path.size() && path[t] == path[first]) continue;
    const SentenceId id = aligned.space.states[path[first]];
    std::string span;
    for (std::size_t u = first; u < t; ++u) {
      if (u > first) span += ' ';
      span += aligned.transcript.tokens[u].surface;
    }
    out += std::to_string(id) + '\t' + std::to_string(first) + '\t' + std::to_string(t - 1) +
           '\t' + OneLine(aligned.doc.sentence(id).text) + '\t' + OneLine(span) + '\n';
    first = t;
  }
  return out;
}

AlignmentResult AlignmentFromJson(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kFormat,
                "alignment JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  AlignmentResult r;
  try {
    if (auto lp = root.find("log_prob"); lp != root.end() && lp->is_number()) {
      r.log_prob = lp->get<double>();
    }
    ReadIf(root, "dropped_oov", r.dropped_oov);
    if (auto p = root.find("path"); p != root.end()) {
      for (const auto &step : *p) r.path.push_back(step.at("state").get<std::size_t>());
    }
    for (const auto &c : root.at("counts")) {
      r.counts.push_back({c.at("sentence_id").get<SentenceId>(), c.at("count").get<std::size_t>()});
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("alignment JSON: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Summaries

std::vector<Summary> Summarize(const PaperDocument &doc, const StateSpace &space,
                               const AlignmentResult &result, const PipelineConfig &config) {
  for (const auto &c : result.counts) {
    if (!std::binary_search(space.states.begin(), space.states.end(), c.sentence_id)) {
      throw Error(ErrorKind::kFormat, "alignment refers to sentence " +
                                          std::to_string(c.sentence_id) +
                                          ", which is not an alignment state of the paper");
    }
  }
  const auto ranking = ImportanceRanking(result);
  std::vector<Summary> out;
  for (const auto &mode : config.budget_modes) {
    const Budget budget = ResolveBudget(mode, doc, space);
    Summary s = (config.hybrid && !budget.sentences)
                    ? HybridSummary(doc, ranking, budget.value, config.redundancy_threshold)
                    : SelectSummary(ranking, doc, budget);
    s.mode = mode;
    out.push_back(std::move(s));
  }
  return out;
}

std::string SummaryToJson(const Summary &summary) {
  std::string text;
  for (std::size_t i = 0; i < summary.texts.size(); ++i) {
    if (i) text += ' ';
    text += summary.texts[i];
  }
  json j = {{"mode", summary.mode.KindName()},
            {"label", summary.mode.Label()},
            {"budget", summary.budget.value},
            {"hybrid", summary.hybrid},
            {"sentence_ids", summary.sentence_ids},
            {"total_words", summary.total_words},
            {"text", text}};
  if (summary.mode.kind == BudgetMode::Kind::kRatio) j["ratio"] = summary.mode.ratio;
  return j.dump(1) + "\n";
}

std::string SummaryFileStem(const Summary &summary) {
  return std::string("summary.") + (summary.hybrid ? "hybrid." : "") + summary.mode.Label();
}

void WriteAlignmentOutputs(const AlignedDocument &aligned, const fs::path &out_dir,
                           std::string_view stem) {
  const std::string base(stem);
  WriteFile(out_dir / (base + ".alignment.json"), AlignmentToJson(aligned));
  WriteFile(out_dir / (base + ".intervals.tsv"), IntervalReport(aligned));
}

void WriteSummaryOutputs(const std::vector<Summary> &summaries, const fs::path &out_dir,
                         std::string_view stem) {
  for (const auto &s : summaries) {
    const std::string base = std::string(stem) + "." + SummaryFileStem(s);
    WriteFile(out_dir / (base + ".txt"), SummaryText(s));
    WriteFile(out_dir / (base + ".json"), SummaryToJson(s));
  }
}

// ---------------------------------------------------------------------------
// Batch

namespace {

constexpr std::string_view kPaperSuffix = ".paper.json";
constexpr std::string_view kTranscriptInfix = ".transcript.";

}  // namespace

std::vector<CorpusPair> FindCorpusPairs(const fs::path &dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::kIo, "not a directory: " + dir.string());
  std::vector<CorpusPair> pairs;
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto &f : files) {
    const std::string name = f.filename().string();
    if (name.size() <= kPaperSuffix.size() || !name.ends_with(kPaperSuffix)) continue;
    CorpusPair pair;
    pair.id = name.substr(0, name.size() - kPaperSuffix.size());
    pair.paper = f;
    const std::string prefix = pair.id + std::string(kTranscriptInfix);
    for (const auto &g : files) {
      if (g.filename().string().starts_with(prefix)) {
        pair.transcript = g;
        break;
      }
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

BatchReport RunBatch(const fs::path &corpus_dir, const fs::path &out_dir,
                     const EmbeddingTable &table, const PipelineConfig &config) {
  config.Validate();
  const std::vector<CorpusPair> pairs = FindCorpusPairs(corpus_dir);
  const bool any_complete = std::any_of(pairs.begin(), pairs.end(),
                                        [](const CorpusPair &p) { return !p.transcript.empty(); });
  if (!any_complete) {
    throw Error(ErrorKind::kEmptyCorpus, "no <id>.paper.json / <id>.transcript.* pairs in " +
                                             corpus_dir.string());
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  std::vector<std::optional<BatchFailure>> failures(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  const int workers = static_cast<int>(config.parallelism);

#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const CorpusPair &pair = pairs[static_cast<std::size_t>(i)];
    try {
      if (pair.transcript.empty()) throw Error(ErrorKind::kIo, "no transcript for " + pair.id);
      const AlignedDocument aligned =
          AlignDocument(ReadFile(pair.paper), ReadFile(pair.transcript), table, config);
      const std::vector<Summary> summaries =
          Summarize(aligned.doc, aligned.space, aligned.result, config);
      WriteAlignmentOutputs(aligned, out_dir, pair.id);
      WriteSummaryOutputs(summaries, out_dir, pair.id);
    } catch (const Error &e) {
      failures[static_cast<std::size_t>(i)] =
          BatchFailure{pair.id, std::string(ErrorKindName(e.kind())), e.what()};
    } catch (const std::exception &e) {
      failures[static_cast<std::size_t>(i)] = BatchFailure{pair.id, "InternalError", e.what()};
    }
  }

  BatchReport report;
  report.config_hash = ConfigHash(config);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (failures[i]) {
      report.failed.push_back(*failures[i]);
    } else {
      report.succeeded.push_back(pairs[i].id);
    }
  }
  WriteFile(out_dir / "manifest.json", ManifestToJson(report));
  return report;
}

std::string ManifestToJson(const BatchReport &report) {
  json failed = json::array();
  for (const auto &f : report.failed) {
    failed.push_back({{"id", f.id}, {"error", f.error}, {"message", f.message}});
  }
  json j = {{"processed", report.succeeded.size()},
            {"succeeded", report.succeeded},
            {"failed", failed},
            {"config_hash", report.config_hash}};
  return j.dump(1) + "\n";
}

}  // namespace talkalign
