// src/viterbi.cc

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

// MAP decoding. Three decoders share setup and backtracking:
//   Viterbi          serial O(T K^2) reference
//   ViterbiParallel  reference recurrence, destinations split over OpenMP
//   ViterbiFast      O(T K) using the geometric transition profile
// All three evaluate a step score as
//   (prev[k] + TransitionModel::LogProbUnchecked(k, l)) + emission(l, y_t)
// and break ties toward the lowest k, so their outputs agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "talkalign/errors.h"
#include "talkalign/hmm.h"

namespace talkalign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct DecodeSetup {
  std::size_t num_states = 0;
  std::size_t length = 0;
  std::vector<std::size_t> obs;
};

DecodeSetup Prepare(const EmissionMatrix &emissions, const TransitionModel &transitions,
                    std::span<const double> start, const Transcript &transcript) {
  DecodeSetup s;
  s.num_states = emissions.num_states;
  s.length = transcript.size();
  if (s.num_states == 0 || s.length == 0) {
    throw Error(ErrorKind::kContract, "decoder needs at least one state and one observation");
  }
  if (transitions.num_states() != s.num_states || start.size() != s.num_states ||
      emissions.sentence_ids.size() != s.num_states) {
    throw Error(ErrorKind::kContract, "decoder inputs disagree on the number of states");
  }
  s.obs = ObservationColumns(emissions, transcript);
  return s;
}

// Writes the initial column into `prev`.
void InitColumn(const EmissionMatrix &emissions, std::span<const double> start, std::size_t y0,
                std::vector<double> &prev) {
  for (std::size_t k = 0; k < prev.size(); ++k) prev[k] = start[k] + emissions.at(k, y0);
}

AlignmentResult Backtrack(const EmissionMatrix &emissions, const Transcript &transcript,
                          const std::vector<double> &last, const std::vector<std::uint32_t> &back,
                          std::size_t num_states, std::size_t length) {
  AlignmentResult result;
  std::size_t arg = 0;
  double best = kNegInf;
  for (std::size_t k = 0; k < num_states; ++k) {
    if (last[k] > best) {
      best = last[k];
      arg = k;
    }
  }
  result.log_prob = best;
  result.path.resize(length);
  result.path[length - 1] = arg;
  for (std::size_t t = length - 1; t > 0; --t) {
    arg = back[(t - 1) * num_states + arg];
    result.path[t - 1] = arg;
  }
  result.counts = CountPath(result.path, emissions.sentence_ids);
  result.dropped_oov = transcript.dropped_oov;
  return result;
}

// Best predecessor of `l` by exhaustive scan; lowest k wins ties.
inline void ScanPredecessors(const std::vector<double> &prev, const TransitionModel &transitions,
                             std::size_t l, double &best, std::uint32_t &arg) {
  best = kNegInf;
  arg = 0;
  for (std::size_t k = 0; k < prev.size(); ++k) {
    const double v = prev[k] + transitions.LogProbUnchecked(k, l);
    if (v > best) {
      best = v;
      arg = static_cast<std::uint32_t>(k);
    }
  }
}

}  // namespace

std::vector<std::size_t> ObservationColumns(const EmissionMatrix &emissions,
                                            const Transcript &transcript) {
  std::vector<std::size_t> obs;
  obs.reserve(transcript.size());
  for (const auto &token : transcript.tokens) {
    auto it = emissions.token_type_index.find(token.surface);
    if (it == emissions.token_type_index.end()) {
      throw Error(ErrorKind::kContract, "token \"" + token.surface + "\" has no emission column");
    }
    obs.push_back(it->second);
  }
  return obs;
}

std::vector<SentenceCount> CountPath(std::span<const std::size_t> path,
                                     std::span<const SentenceId> sentence_ids) {
  std::vector<std::size_t> per_state(sentence_ids.size(), 0);
  for (std::size_t s : path) ++per_state.at(s);
  std::vector<SentenceCount> counts;
  for (std::size_t k = 0; k < per_state.size(); ++k) {
    if (per_state[k] > 0) counts.push_back({sentence_ids[k], per_state[k]});
  }
  std::sort(counts.begin(), counts.end(),
            [](const SentenceCount &a, const SentenceCount &b) { return a.sentence_id < b.sentence_id; });
  return counts;
}

double PathLogProb(const EmissionMatrix &emissions, const TransitionModel &transitions,
                   std::span<const double> start, std::span<const std::size_t> observations,
                   std::span<const std::size_t> path) {
  if (path.empty() || path.size() != observations.size()) {
    throw Error(ErrorKind::kContract, "path and observations differ in length");
  }
  double score = start[path[0]] + emissions.at(path[0], observations[0]);
  for (std::size_t t = 1; t < path.size(); ++t) {
    score = score + transitions.LogProb(path[t - 1], path[t]);
    score = score + emissions.at(path[t], observations[t]);
  }
  return score;
}

AlignmentResult Viterbi(const EmissionMatrix &emissions, const TransitionModel &transitions,
                        std::span<const double> start, const Transcript &transcript) {
  const DecodeSetup s = Prepare(emissions, transitions, start, transcript);
  const std::size_t K = s.num_states;
  std::vector<double> prev(K), cur(K);
  std::vector<std::uint32_t> back((s.length - 1) * K);
  InitColumn(emissions, start, s.obs[0], prev);
  for (std::size_t t = 1; t < s.length; ++t) {
    std::uint32_t *bp = back.data() + (t - 1) * K;
    for (std::size_t l = 0; l < K; ++l) {
      double best;
      ScanPredecessors(prev, transitions, l, best, bp[l]);
      cur[l] = best + emissions.at(l, s.obs[t]);
    }
    std::swap(prev, cur);
  }
  return Backtrack(emissions, transcript, prev, back, K, s.length);
}

AlignmentResult ViterbiParallel(const EmissionMatrix &emissions,
                                const TransitionModel &transitions,
                                std::span<const double> start, const Transcript &transcript) {
  const DecodeSetup s = Prepare(emissions, transitions, start, transcript);
  const std::size_t K = s.num_states;
  std::vector<double> prev(K), cur(K);
  std::vector<std::uint32_t> back((s.length - 1) * K);
  InitColumn(emissions, start, s.obs[0], prev);
  const auto n = static_cast<std::ptrdiff_t>(K);
#pragma omp parallel
  {
    for (std::size_t t = 1; t < s.length; ++t) {
      std::uint32_t *bp = back.data() + (t - 1) * K;
#pragma omp for schedule(static)
      for (std::ptrdiff_t li = 0; li < n; ++li) {
        const auto l = static_cast<std::size_t>(li);
        double best;
        ScanPredecessors(prev, transitions, l, best, bp[l]);
        cur[l] = best + emissions.at(l, s.obs[t]);
      }
#pragma omp single
      std::swap(prev, cur);
    }
  }
  return Backtrack(emissions, transcript, prev, back, K, s.length);
}

namespace {

// Predecessors on one side of the diagonal. Along a sweep every stored
// candidate's score changes by the same log(lambda) per step, so only
// candidates whose sweep-invariant key is within rounding distance of the
// best key can ever be (or tie) the maximum. Those are kept and rescored
// with the exact transition expression.
class CandidateSet {
 public:
  void Clear() {
    items_.clear();
    max_key_ = kNegInf;
  }

  void Insert(double key, std::size_t k) {
    if (key == kNegInf) return;
    if (items_.empty()) {
      items_.push_back({key, k});
      max_key_ = key;
      return;
    }
    const double margin = Margin(std::max(std::abs(key), std::abs(max_key_)));
    if (key > max_key_ + margin) {
      items_.clear();
      items_.push_back({key, k});
      max_key_ = key;
    } else if (key >= max_key_ - margin) {
      items_.push_back({key, k});
      if (key > max_key_) {
        max_key_ = key;
        const double floor = max_key_ - Margin(std::abs(max_key_));
        std::erase_if(items_, [floor](const Item &it) { return it.key < floor; });
      }
    }
  }

  // Exact best over the stored candidates; lowest k wins ties.
  void Best(const std::vector<double> &prev, const TransitionModel &transitions, std::size_t l,
            double &best, std::size_t &arg) const {
    best = kNegInf;
    arg = 0;
    bool found = false;
    for (const auto &it : items_) {
      const double v = prev[it.k] + transitions.LogProbUnchecked(it.k, l);
      if (!found || v > best || (v == best && it.k < arg)) {
        best = v;
        arg = it.k;
        found = true;
      }
    }
  }

  bool empty() const { return items_.empty(); }

 private:
  struct Item {
    double key;
    std::size_t k;
  };

  // Far above the rounding error of the key and score expressions.
  static double Margin(double magnitude) { return 1e-9 * (1.0 + magnitude); }

  std::vector<Item> items_;
  double max_key_ = kNegInf;
};

}  // namespace

AlignmentResult ViterbiFast(const EmissionMatrix &emissions, const TransitionModel &transitions,
                            std::span<const double> start, const Transcript &transcript) {
  const DecodeSetup s = Prepare(emissions, transitions, start, transcript);
  const std::size_t K = s.num_states;
  if (K == 1) return Viterbi(emissions, transitions, start, transcript);

  std::vector<double> prev(K), cur(K);
  std::vector<std::uint32_t> back((s.length - 1) * K);
  std::vector<double> back_best(K);
  std::vector<std::size_t> back_arg(K);
  CandidateSet cands;
  const double log_lambda = transitions.log_lambda();
  InitColumn(emissions, start, s.obs[0], prev);

  for (std::size_t t = 1; t < s.length; ++t) {
    // Backward jumps (k > l):
    //   prev[k] + log(gamma beta_k) + (k - l - 1) log(lambda)
    //     = [prev[k] + log(gamma beta_k) + k log(lambda)] - (l + 1) log(lambda)
    cands.Clear();
    for (std::size_t l = K; l-- > 0;) {
      if (l + 1 < K) {
        const std::size_t k = l + 1;
        cands.Insert(prev[k] + transitions.log_gamma_beta(k) + static_cast<double>(k) * log_lambda,
                     k);
      }
      cands.Best(prev, transitions, l, back_best[l], back_arg[l]);
      if (cands.empty()) back_best[l] = kNegInf;
    }

    // Forward jumps (k < l):
    //   prev[k] + log(beta_k) + (l - k - 1) log(lambda)
    //     = [prev[k] + log(beta_k) - k log(lambda)] + (l - 1) log(lambda)
    cands.Clear();
    std::uint32_t *bp = back.data() + (t - 1) * K;
    for (std::size_t l = 0; l < K; ++l) {
      if (l > 0) {
        const std::size_t k = l - 1;
        cands.Insert(prev[k] + transitions.log_beta(k) - static_cast<double>(k) * log_lambda, k);
      }
      double best = kNegInf;
      std::size_t arg = 0;
      bool found = false;
      if (!cands.empty()) {
        cands.Best(prev, transitions, l, best, arg);
        found = true;
      }
      const double stay = prev[l] + transitions.LogProbUnchecked(l, l);
      if (!found || stay > best) {
        best = stay;
        arg = l;
        found = true;
      }
      if (back_best[l] > best) {
        best = back_best[l];
        arg = back_arg[l];
      }
      // The reference reports position 0 when every predecessor is -inf.
      if (best == kNegInf) arg = 0;
      bp[l] = static_cast<std::uint32_t>(arg);
      cur[l] = best + emissions.at(l, s.obs[t]);
    }
    std::swap(prev, cur);
  }
  return Backtrack(emissions, transcript, prev, back, K, s.length);
}

}  // namespace talkalign
