// src/summarizer.cc

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

#include "talkalign/summarizer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "talkalign/errors.h"

namespace talkalign {

namespace {

std::string ShortestDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

using Bigram = std::pair<std::string_view, std::string_view>;

void AddBigrams(const std::vector<std::string> &tokens, std::set<Bigram> &out) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) out.emplace(tokens[i], tokens[i + 1]);
}

void Finish(const PaperDocument &doc, Summary &summary) {
  summary.texts.clear();
  summary.total_words = 0;
  for (SentenceId id : summary.sentence_ids) {
    const Sentence &s = doc.sentence(id);
    summary.texts.push_back(s.text);
    summary.total_words += s.word_count;
  }
}

}  // namespace

BudgetMode BudgetMode::FixedWords(std::size_t words) {
  BudgetMode m;
  m.kind = Kind::kFixedWords;
  m.words = words;
  return m;
}

BudgetMode BudgetMode::Ratio(double ratio) {
  BudgetMode m;
  m.kind = Kind::kRatio;
  m.ratio = ratio;
  return m;
}

BudgetMode BudgetMode::TopN(std::size_t n) {
  BudgetMode m;
  m.kind = Kind::kTopN;
  m.top_n = n;
  return m;
}

void BudgetMode::Validate() const {
  switch (kind) {
    case Kind::kFixedWords:
      if (words < 1) throw Error(ErrorKind::kUsage, "word budget must be at least 1");
      break;
    case Kind::kRatio:
      if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorKind::kUsage, "ratio must lie in (0, 1)");
      break;
    case Kind::kTopN:
      if (top_n < 1) throw Error(ErrorKind::kUsage, "top-n must be at least 1");
      break;
  }
}

std::string BudgetMode::Label() const {
  switch (kind) {
    case Kind::kFixedWords: return "words" + std::to_string(words);
    case Kind::kRatio: return "ratio" + ShortestDouble(ratio);
    case Kind::kTopN: return "top" + std::to_string(top_n);
  }
  return {};
}

std::string BudgetMode::KindName() const {
  switch (kind) {
    case Kind::kFixedWords: return "fixed_words";
    case Kind::kRatio: return "ratio";
    case Kind::kTopN: return "top_n";
  }
  return {};
}

std::vector<RankedSentence> ImportanceRanking(const std::vector<SentenceCount> &counts) {
  std::vector<RankedSentence> ranking;
  for (const auto &c : counts) {
    if (c.count > 0) ranking.push_back({c.sentence_id, c.count});
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedSentence &a, const RankedSentence &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.sentence_id < b.sentence_id;
  });
  return ranking;
}

Budget ResolveBudget(const BudgetMode &mode, const PaperDocument &doc, const StateSpace &space) {
  mode.Validate();
  switch (mode.kind) {
    case BudgetMode::Kind::kFixedWords: return {false, mode.words};
    case BudgetMode::Kind::kTopN: return {true, mode.top_n};
    case BudgetMode::Kind::kRatio: {
      std::size_t total = 0;
      for (SentenceId id : space.states) total += doc.sentence(id).word_count;
      const auto budget =
          static_cast<std::size_t>(std::floor(mode.ratio * static_cast<double>(total)));
      if (budget == 0) {
        throw Error(ErrorKind::kBudgetTooSmall, "ratio " + ShortestDouble(mode.ratio) + " of " +
                                                    std::to_string(total) + " words rounds to 0");
      }
      return {false, budget};
    }
  }
  return {};
}

Summary SelectSummary(const std::vector<RankedSentence> &ranking, const PaperDocument &doc,
                      const Budget &budget) {
  Summary summary;
  summary.budget = budget;
  if (budget.sentences) {
    for (const auto &r : ranking) {
      if (summary.sentence_ids.size() >= budget.value) break;
      if (doc.role_of(r.sentence_id) == SectionRole::kAcknowledgments) continue;
      summary.sentence_ids.push_back(r.sentence_id);
    }
  } else {
    std::size_t remaining = budget.value;
    for (const auto &r : ranking) {
      if (doc.role_of(r.sentence_id) == SectionRole::kAcknowledgments) continue;
      const std::size_t words = doc.sentence(r.sentence_id).word_count;
      if (words > remaining) continue;
      summary.sentence_ids.push_back(r.sentence_id);
      remaining -= words;
    }
  }
  std::sort(summary.sentence_ids.begin(), summary.sentence_ids.end());
  Finish(doc, summary);
  return summary;
}

double BigramOverlap(const std::vector<std::string> &candidate,
                     const std::vector<std::vector<std::string>> &selected) {
  std::set<Bigram> cand;
  AddBigrams(candidate, cand);
  if (cand.empty()) return 0.0;
  std::set<Bigram> seen;
  for (const auto &tokens : selected) AddBigrams(tokens, seen);
  std::size_t shared = 0;
  for (const auto &b : cand) shared += seen.contains(b) ? 1 : 0;
  return static_cast<double>(shared) / static_cast<double>(cand.size());
}

Summary HybridSummary(const PaperDocument &doc, const std::vector<RankedSentence> &ranking,
                      std::size_t word_budget, double redundancy_threshold) {
  Summary summary;
  summary.hybrid = true;
  summary.budget = {false, word_budget};

  std::vector<SentenceId> abstract_ids;
  std::vector<std::vector<std::string>> selected_tokens;
  std::size_t used = 0;
  SentenceId id = 0;
  for (const auto &section : doc.sections) {
    for (const auto &sentence : section.sentences) {
      if (section.role == SectionRole::kAbstract) {
        abstract_ids.push_back(id);
        selected_tokens.push_back(sentence.tokens);
        used += sentence.word_count;
      }
      ++id;
    }
  }
  if (abstract_ids.empty()) throw Error(ErrorKind::kMissingAbstract, "document has no abstract");

  std::size_t remaining = word_budget > used ? word_budget - used : 0;
  std::vector<SentenceId> additions;
  for (const auto &r : ranking) {
    if (remaining == 0) break;
    const SectionRole role = doc.role_of(r.sentence_id);
    if (role == SectionRole::kAcknowledgments || role == SectionRole::kAbstract) continue;
    const Sentence &s = doc.sentence(r.sentence_id);
    if (s.word_count > remaining) continue;
    if (BigramOverlap(s.tokens, selected_tokens) > redundancy_threshold) continue;
    additions.push_back(r.sentence_id);
    selected_tokens.push_back(s.tokens);
    remaining -= s.word_count;
  }
  std::sort(additions.begin(), additions.end());
  summary.sentence_ids = std::move(abstract_ids);
  summary.sentence_ids.insert(summary.sentence_ids.end(), additions.begin(), additions.end());
  Finish(doc, summary);
  return summary;
}

std::string SummaryText(const Summary &summary) {
  std::string out;
  for (const auto &t : summary.texts) {
    out += t;
    out += '\n';
  }
  return out;
}

}  // namespace talkalign
