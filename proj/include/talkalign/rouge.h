// include/talkalign/rouge.h

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

// ROUGE-N and ROUGE-SU4 against a single reference.

#ifndef TALKALIGN_ROUGE_H_
#define TALKALIGN_ROUGE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace talkalign {

enum class RougeMetric { kRouge2, kRouge3, kSu4 };

std::string_view RougeMetricName(RougeMetric metric);
std::optional<RougeMetric> ParseRougeMetric(std::string_view name);

struct RougeScore {
  RougeMetric metric = RougeMetric::kRouge2;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

/// Units joined with '\x1f'; unigrams carry no separator.
using NgramCounts = std::map<std::string, std::size_t>;

inline constexpr char kUnitSeparator = '\x1f';
/// Skip-bigram window: pairs (i, j) with 0 < j - i <= kSkipWindow.
inline constexpr std::size_t kSkipWindow = 5;

NgramCounts NgramMultiset(const std::vector<std::string> &tokens, std::size_t n);
NgramCounts Su4Multiset(const std::vector<std::string> &tokens);

struct RougeOptions {
  bool stem = false;
};

/// Scores pre-tokenized input. Throws Error(kEmptyText) if either is empty.
RougeScore ScoreTokens(const std::vector<std::string> &candidate,
                       const std::vector<std::string> &reference, RougeMetric metric);

/// Tokenizes with the corpus tokenizer (optionally Porter-stemmed) and scores.
RougeScore Score(std::string_view candidate, std::string_view reference, RougeMetric metric,
                 const RougeOptions &options = {});

/// "doc_id\tmetric\trecall\tprecision\tf1"
std::string FormatRougeRow(std::string_view doc_id, const RougeScore &score);

}  // namespace talkalign

#endif  // TALKALIGN_ROUGE_H_
