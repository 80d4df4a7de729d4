// src/rouge.cc

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

#include "talkalign/rouge.h"

#include <algorithm>
#include <charconv>
#include <string>

#include "talkalign/errors.h"
#include "talkalign/text.h"

namespace talkalign {

std::string_view RougeMetricName(RougeMetric metric) {
  switch (metric) {
    case RougeMetric::kRouge2: return "rouge2";
    case RougeMetric::kRouge3: return "rouge3";
    case RougeMetric::kSu4: return "su4";
  }
  return "";
}

std::optional<RougeMetric> ParseRougeMetric(std::string_view name) {
  if (name == "rouge2") return RougeMetric::kRouge2;
  if (name == "rouge3") return RougeMetric::kRouge3;
  if (name == "su4") return RougeMetric::kSu4;
  return std::nullopt;
}

NgramCounts NgramMultiset(const std::vector<std::string> &tokens, std::size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key += kUnitSeparator;
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

NgramCounts Su4Multiset(const std::vector<std::string> &tokens) {
  NgramCounts counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++counts[tokens[i]];
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= kSkipWindow; ++j) {
      ++counts[tokens[i] + kUnitSeparator + tokens[j]];
    }
  }
  return counts;
}

namespace {

NgramCounts Units(const std::vector<std::string> &tokens, RougeMetric metric) {
  switch (metric) {
    case RougeMetric::kRouge2: return NgramMultiset(tokens, 2);
    case RougeMetric::kRouge3: return NgramMultiset(tokens, 3);
    case RougeMetric::kSu4: return Su4Multiset(tokens);
  }
  return {};
}

std::size_t Total(const NgramCounts &counts) {
  std::size_t n = 0;
  for (const auto &[unit, c] : counts) n += c;
  return n;
}

std::string FormatScore(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

RougeScore ScoreTokens(const std::vector<std::string> &candidate,
                       const std::vector<std::string> &reference, RougeMetric metric) {
  if (candidate.empty() || reference.empty()) {
    throw Error(ErrorKind::kEmptyText, "ROUGE input is empty after tokenization");
  }
  const NgramCounts cand = Units(candidate, metric);
  const NgramCounts ref = Units(reference, metric);
  std::size_t overlap = 0;
  for (const auto &[unit, c] : cand) {
    if (auto it = ref.find(unit); it != ref.end()) overlap += std::min(c, it->second);
  }
  const std::size_t ref_total = Total(ref);
  const std::size_t cand_total = Total(cand);
  RougeScore score;
  score.metric = metric;
  score.recall = ref_total ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
  score.precision = cand_total ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
  const double sum = score.recall + score.precision;
  score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  return score;
}

RougeScore Score(std::string_view candidate, std::string_view reference, RougeMetric metric,
                 const RougeOptions &options) {
  auto prepare = [&](std::string_view text) {
    auto tokens = Tokenize(text);
    if (options.stem) {
      for (auto &t : tokens) t = PorterStem(t);
    }
    return tokens;
  };
  return ScoreTokens(prepare(candidate), prepare(reference), metric);
}

std::string FormatRougeRow(std::string_view doc_id, const RougeScore &score) {
  std::string row(doc_id);
  row += '\t';
  row += RougeMetricName(score.metric);
  row += '\t' + FormatScore(score.recall);
  row += '\t' + FormatScore(score.precision);
  row += '\t' + FormatScore(score.f1);
  return row;
}

}  // namespace talkalign
