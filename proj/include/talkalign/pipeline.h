// include/talkalign/pipeline.h

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

// End-to-end document pipeline used by the command-line tool: ingestion,
// alignment, summarization, serialization and the batch runner.

#ifndef TALKALIGN_PIPELINE_H_
#define TALKALIGN_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "talkalign/corpus.h"
#include "talkalign/embeddings.h"
#include "talkalign/hmm.h"
#include "talkalign/summarizer.h"

namespace talkalign {

enum class DecoderKind { kFast, kReference };

struct PipelineConfig {
  HmmParams params;
  bool remove_stopwords = true;
  SimilarityKind similarity_kind = SimilarityKind::kRescaledCosine;
  bool emission_normalize = true;
  std::vector<BudgetMode> budget_modes{BudgetMode::FixedWords(150)};
  bool hybrid = false;
  double redundancy_threshold = kDefaultRedundancyThreshold;
  std::string embeddings_path;
  std::size_t parallelism = 1;
  DecoderKind decoder = DecoderKind::kFast;

  /// Throws Error(kUsage) on an invalid field.
  void Validate() const;
};

/// Parses the JSON config; absent fields keep their defaults. Throws
/// Error(kFormat) on malformed JSON or a field of the wrong type.
PipelineConfig ParseConfig(std::string_view json);
std::string ConfigToJson(const PipelineConfig &config);
/// FNV-1a of the canonical config JSON, excluding parallelism, as 16 hex
/// digits.
std::string ConfigHash(const PipelineConfig &config);

/// Whole-file read / write. Throw Error(kIo).
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

struct AlignedDocument {
  PaperDocument doc;  // cleaned
  StateSpace space;
  Transcript transcript;  // cleaned, OOV-filtered
  TransitionModel transitions;
  AlignmentResult result;
};

AlignedDocument AlignDocument(std::string_view paper_json, std::string_view transcript_input,
                              const EmbeddingTable &table, const PipelineConfig &config);

std::string AlignmentToJson(const AlignedDocument &aligned);
/// Tab-separated rows: sentence_id, first_t, last_t, sentence text, spoken
/// span; one row per run of identical states.
std::string IntervalReport(const AlignedDocument &aligned);

/// Reads the "counts" (and log_prob / dropped_oov) back from alignment JSON.
AlignmentResult AlignmentFromJson(std::string_view json);

/// One summary per budget mode. Hybrid applies to word budgets only; top-n
/// summaries are always plain. Throws Error(kFormat) when the counts name a
/// sentence outside the state space.
std::vector<Summary> Summarize(const PaperDocument &doc, const StateSpace &space,
                               const AlignmentResult &result, const PipelineConfig &config);

std::string SummaryToJson(const Summary &summary);
/// "summary.words150", "summary.hybrid.ratio0.3", ...
std::string SummaryFileStem(const Summary &summary);

/// Writes <stem>.alignment.json and <stem>.intervals.tsv under `out_dir`.
void WriteAlignmentOutputs(const AlignedDocument &aligned, const std::filesystem::path &out_dir,
                           std::string_view stem);
/// Writes <stem>.<summary stem>.txt / .json for each summary.
void WriteSummaryOutputs(const std::vector<Summary> &summaries,
                         const std::filesystem::path &out_dir, std::string_view stem);

struct CorpusPair {
  std::string id;
  std::filesystem::path paper;
  std::filesystem::path transcript;
};

/// Every <id>.paper.json in `dir`, sorted by id, with its <id>.transcript.*
/// file (empty path when there is none).
std::vector<CorpusPair> FindCorpusPairs(const std::filesystem::path &dir);

struct BatchFailure {
  std::string id;
  std::string error;    // error class name, e.g. "FormatError"
  std::string message;
};

struct BatchReport {
  std::vector<std::string> succeeded;  // sorted
  std::vector<BatchFailure> failed;    // sorted by id
  std::string config_hash;
};

/// Aligns and summarizes every pair with up to config.parallelism workers,
/// writes per-document outputs and manifest.json under `out_dir`. A failing
/// document is recorded in the manifest and never aborts the run. Throws
/// Error(kEmptyCorpus) when no pair is found.
BatchReport RunBatch(const std::filesystem::path &corpus_dir, const std::filesystem::path &out_dir,
                     const EmbeddingTable &table, const PipelineConfig &config);

std::string ManifestToJson(const BatchReport &report);

}  // namespace talkalign

#endif  // TALKALIGN_PIPELINE_H_
