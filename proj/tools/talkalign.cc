// tools/talkalign.cc

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

// talkalign: align a talk transcript to its paper, extract summaries, and
// score summaries with ROUGE.
//
//   talkalign align <paper.json> <transcript> --embeddings <vec.txt> [--out dir]
//   talkalign summarize <alignment.json> <paper.json> --words 150 --ratio 0.3
//   talkalign eval <candidate> <reference> --metric rouge2 --metric su4
//   talkalign batch <corpus_dir> --config cfg.json --jobs 4 --out dir

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "talkalign/errors.h"
#include "talkalign/pipeline.h"
#include "talkalign/rouge.h"

namespace fs = std::filesystem;
using namespace talkalign;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string embeddings_path;
  std::string out_dir = ".";
};

struct HmmFlags {
  std::optional<double> alpha;
  std::optional<std::string> similarity;
  std::optional<std::string> decoder;
  bool keep_stopwords = false;
  bool no_normalize = false;
};

struct SummaryFlags {
  std::vector<std::size_t> words;
  std::vector<double> ratios;
  std::vector<std::size_t> top_n;
  bool hybrid = false;
  std::optional<double> redundancy;
};

void AddCommon(CLI::App *cmd, CommonFlags &f, bool with_embeddings) {
  cmd->add_option("--config", f.config_path, "JSON pipeline config");
  if (with_embeddings) cmd->add_option("--embeddings", f.embeddings_path, "word-vector text file");
  cmd->add_option("--out", f.out_dir, "output directory")->capture_default_str();
}

void AddHmm(CLI::App *cmd, HmmFlags &f) {
  cmd->add_option("--alpha", f.alpha, "fixed stay probability in (0,1)");
  cmd->add_option("--similarity", f.similarity, "rescaled_cosine | clamped_cosine")
      ->check(CLI::IsMember({"rescaled_cosine", "clamped_cosine"}));
  cmd->add_option("--decoder", f.decoder, "fast | reference")
      ->check(CLI::IsMember({"fast", "reference"}));
  cmd->add_flag("--keep-stopwords", f.keep_stopwords, "do not drop transcript stopwords");
  cmd->add_flag("--no-normalize", f.no_normalize, "use raw emission scores");
}

void AddSummary(CLI::App *cmd, SummaryFlags &f) {
  cmd->add_option("--words", f.words, "fixed word budget (repeatable)");
  cmd->add_option("--ratio", f.ratios, "budget as a fraction of paper words (repeatable)");
  cmd->add_option("--top-n", f.top_n, "number of top-ranked sentences (repeatable)");
  cmd->add_flag("--hybrid", f.hybrid, "start from the abstract and add non-redundant sentences");
  cmd->add_option("--redundancy", f.redundancy, "bigram-overlap threshold for --hybrid");
}

PipelineConfig LoadConfig(const CommonFlags &common) {
  PipelineConfig config;
  if (!common.config_path.empty()) config = ParseConfig(ReadFile(common.config_path));
  if (!common.embeddings_path.empty()) config.embeddings_path = common.embeddings_path;
  return config;
}

void ApplyHmm(const HmmFlags &f, PipelineConfig &config) {
  if (f.alpha) config.params.alpha_override = *f.alpha;
  if (f.similarity) config.similarity_kind = *ParseSimilarityKind(*f.similarity);
  if (f.decoder) config.decoder = *f.decoder == "fast" ? DecoderKind::kFast : DecoderKind::kReference;
  if (f.keep_stopwords) config.remove_stopwords = false;
  if (f.no_normalize) config.emission_normalize = false;
}

void ApplySummary(const SummaryFlags &f, PipelineConfig &config) {
  std::vector<BudgetMode> modes;
  for (auto w : f.words) modes.push_back(BudgetMode::FixedWords(w));
  for (auto r : f.ratios) modes.push_back(BudgetMode::Ratio(r));
  for (auto n : f.top_n) modes.push_back(BudgetMode::TopN(n));
  if (!modes.empty()) config.budget_modes = std::move(modes);
  if (f.hybrid) config.hybrid = true;
  if (f.redundancy) config.redundancy_threshold = *f.redundancy;
}

EmbeddingTable LoadTable(const PipelineConfig &config) {
  if (config.embeddings_path.empty()) {
    throw Error(ErrorKind::kUsage, "an embeddings file is required (--embeddings or config)");
  }
  EmbeddingTable table = LoadEmbeddingsFile(config.embeddings_path);
  if (table.dropped_zero_norm() > 0) {
    std::cerr << "warning: skipped " << table.dropped_zero_norm() << " zero-norm vectors\n";
  }
  return table;
}

// "<dir>/abc.paper.json" -> "abc"
std::string DocumentStem(const fs::path &paper) {
  std::string name = paper.filename().string();
  for (std::string_view suffix : {".paper.json", ".json"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name;
}

int RunAlign(const std::string &paper, const std::string &transcript, const CommonFlags &common,
             const HmmFlags &hmm) {
  PipelineConfig config = LoadConfig(common);
  ApplyHmm(hmm, config);
  config.Validate();
  const EmbeddingTable table = LoadTable(config);
  const AlignedDocument aligned = AlignDocument(ReadFile(paper), ReadFile(transcript), table, config);
  WriteAlignmentOutputs(aligned, common.out_dir, DocumentStem(paper));
  std::cerr << "aligned " << aligned.transcript.size() << " tokens to " << aligned.space.size()
            << " sentences (alpha " << aligned.transitions.alpha() << ", dropped "
            << aligned.result.dropped_oov << " OOV)\n";
  return 0;
}

int RunSummarize(const std::string &alignment, const std::string &paper, const CommonFlags &common,
                 const SummaryFlags &flags) {
  PipelineConfig config = LoadConfig(common);
  ApplySummary(flags, config);
  config.Validate();
  const AlignmentResult result = AlignmentFromJson(ReadFile(alignment));
  const PaperDocument doc = CleanPaper(ParsePaper(ReadFile(paper)));
  const StateSpace space = BuildStateSpace(doc);
  WriteSummaryOutputs(Summarize(doc, space, result, config), common.out_dir, DocumentStem(paper));
  return 0;
}

int RunEval(const std::string &candidate, const std::string &reference,
            const std::vector<std::string> &metric_names, bool stem) {
  std::vector<RougeMetric> metrics;
  for (const auto &name : metric_names) metrics.push_back(*ParseRougeMetric(name));
  if (metrics.empty()) metrics = {RougeMetric::kRouge2, RougeMetric::kRouge3, RougeMetric::kSu4};

  std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> jobs;
  if (fs::is_directory(candidate)) {
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(candidate)) {
      if (e.is_regular_file() && fs::exists(fs::path(reference) / e.path().filename())) {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
      jobs.push_back({f.stem().string(), {f, fs::path(reference) / f.filename()}});
    }
    if (jobs.empty()) throw Error(ErrorKind::kEmptyCorpus, "no candidate/reference file pairs");
  } else {
    jobs.push_back({fs::path(candidate).stem().string(), {candidate, reference}});
  }
  for (const auto &[id, files] : jobs) {
    const std::string cand = ReadFile(files.first);
    const std::string ref = ReadFile(files.second);
    for (auto m : metrics) std::cout << FormatRougeRow(id, Score(cand, ref, m, {.stem = stem})) << '\n';
  }
  return 0;
}

int RunBatchCommand(const std::string &corpus, const CommonFlags &common, const HmmFlags &hmm,
                    const SummaryFlags &summary, std::optional<std::size_t> jobs) {
  PipelineConfig config = LoadConfig(common);
  ApplyHmm(hmm, config);
  ApplySummary(summary, config);
  if (jobs) config.parallelism = *jobs;
  config.Validate();
  const EmbeddingTable table = LoadTable(config);
  const BatchReport report = RunBatch(corpus, common.out_dir, table, config);
  std::cerr << "processed " << report.succeeded.size() << ", failed " << report.failed.size()
            << "\n";
  for (const auto &f : report.failed) std::cerr << "  " << f.id << ": " << f.error << ": " << f.message << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Align talk transcripts to papers and build extractive summaries"};
  app.require_subcommand(1);

  CommonFlags align_common, summarize_common, batch_common;
  HmmFlags align_hmm, batch_hmm;
  SummaryFlags summarize_flags, batch_summary;

  std::string paper, transcript;
  auto *align = app.add_subcommand("align", "decode the sentence alignment of one talk");
  align->add_option("paper", paper, "paper JSON")->required();
  align->add_option("transcript", transcript, "transcript text or JSON")->required();
  AddCommon(align, align_common, true);
  AddHmm(align, align_hmm);

  std::string alignment, summarize_paper;
  auto *summarize = app.add_subcommand("summarize", "build summaries from an alignment");
  summarize->add_option("alignment", alignment, "alignment JSON from `align`")->required();
  summarize->add_option("paper", summarize_paper, "paper JSON")->required();
  AddCommon(summarize, summarize_common, false);
  AddSummary(summarize, summarize_flags);

  std::string candidate, reference;
  std::vector<std::string> metrics;
  bool stem = false;
  auto *eval = app.add_subcommand("eval", "ROUGE scores as TSV on stdout");
  eval->add_option("candidate", candidate, "candidate summary file or directory")->required();
  eval->add_option("reference", reference, "reference summary file or directory")->required();
  eval->add_option("--metric", metrics, "rouge2 | rouge3 | su4 (repeatable)")
      ->check(CLI::IsMember({"rouge2", "rouge3", "su4"}));
  eval->add_flag("--stem", stem, "apply the Porter stemmer before matching");

  std::string corpus;
  std::optional<std::size_t> jobs;
  auto *batch = app.add_subcommand("batch", "align and summarize every pair in a directory");
  batch->add_option("corpus", corpus, "directory of <id>.paper.json / <id>.transcript.*")->required();
  AddCommon(batch, batch_common, true);
  AddHmm(batch, batch_hmm);
  AddSummary(batch, batch_summary);
  batch->add_option("--jobs", jobs, "concurrent documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return ExitCode(ErrorKind::kUsage);
  }

  try {
    if (*align) return RunAlign(paper, transcript, align_common, align_hmm);
    if (*summarize) return RunSummarize(alignment, summarize_paper, summarize_common, summarize_flags);
    if (*eval) return RunEval(candidate, reference, metrics, stem);
    if (*batch) return RunBatchCommand(corpus, batch_common, batch_hmm, batch_summary, jobs);
  } catch (const Error &e) {
    std::cerr << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCode(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "error: InternalError: " << e.what() << "\n";
    return 1;
  }
  return ExitCode(ErrorKind::kUsage);
}
