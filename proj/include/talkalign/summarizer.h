// include/talkalign/summarizer.h

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

// Extractive summaries ranked by how long the speaker dwelt on each sentence.

#ifndef TALKALIGN_SUMMARIZER_H_
#define TALKALIGN_SUMMARIZER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "talkalign/corpus.h"
#include "talkalign/hmm.h"

namespace talkalign {

struct BudgetMode {
  enum class Kind { kFixedWords, kRatio, kTopN };
  Kind kind = Kind::kFixedWords;
  std::size_t words = 0;  // kFixedWords
  double ratio = 0.0;     // kRatio, in (0, 1)
  std::size_t top_n = 0;  // kTopN

  static BudgetMode FixedWords(std::size_t words);
  static BudgetMode Ratio(double ratio);
  static BudgetMode TopN(std::size_t n);

  /// Throws Error(kUsage) on an out-of-range parameter.
  void Validate() const;
  /// "words150", "ratio0.3", "top30" - used in output file names.
  std::string Label() const;
  std::string KindName() const;

  bool operator==(const BudgetMode &) const = default;
};

/// Resolved budget: a word limit, or a sentence count for top-n.
struct Budget {
  bool sentences = false;
  std::size_t value = 0;
};

struct RankedSentence {
  SentenceId sentence_id = 0;
  std::size_t count = 0;
  bool operator==(const RankedSentence &) const = default;
};

struct Summary {
  std::vector<SentenceId> sentence_ids;  // document order
  std::vector<std::string> texts;
  std::size_t total_words = 0;
  BudgetMode mode;
  Budget budget;
  bool hybrid = false;
};

/// Count-descending, ties by document position; zero counts dropped.
std::vector<RankedSentence> ImportanceRanking(const std::vector<SentenceCount> &counts);
inline std::vector<RankedSentence> ImportanceRanking(const AlignmentResult &result) {
  return ImportanceRanking(result.counts);
}

/// Ratio budgets are floor(r * words of the state-space sentences); a zero
/// result throws Error(kBudgetTooSmall).
Budget ResolveBudget(const BudgetMode &mode, const PaperDocument &doc, const StateSpace &space);

/// Greedy skip-and-continue fill over the ranking (word budgets) or the first
/// n ranked sentences (top-n). Acknowledgments sentences are never taken.
Summary SelectSummary(const std::vector<RankedSentence> &ranking, const PaperDocument &doc,
                      const Budget &budget);

inline constexpr double kDefaultRedundancyThreshold = 0.5;

/// Fraction of the candidate's distinct token bigrams already present in
/// `selected`. 0 for candidates with fewer than two tokens.
double BigramOverlap(const std::vector<std::string> &candidate,
                     const std::vector<std::vector<std::string>> &selected);

/// The whole abstract first, then ranked sentences under the remaining word
/// budget, skipping any whose bigram overlap with the summary so far exceeds
/// `redundancy_threshold`. Throws Error(kMissingAbstract) when the document
/// has no abstract sentences.
Summary HybridSummary(const PaperDocument &doc, const std::vector<RankedSentence> &ranking,
                      std::size_t word_budget,
                      double redundancy_threshold = kDefaultRedundancyThreshold);

/// One sentence per line, document order.
std::string SummaryText(const Summary &summary);

}  // namespace talkalign

#endif  // TALKALIGN_SUMMARIZER_H_
