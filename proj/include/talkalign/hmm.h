// include/talkalign/hmm.h

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

// The sentence-alignment HMM: hidden states are paper sentences, outputs are
// spoken words. Transitions follow a geometric profile around the current
// sentence,
//
//   T(k, k)     = alpha
//   T(k, k + j) = beta_k * lambda^(j-1)           j >= 1
//   T(k, k - j) = gamma * beta_k * lambda^(j-1)   j >= 1
//
// with alpha = max(delta * (1 - K/T), epsilon) and beta_k chosen so every
// row sums to one. All state positions in this header are 0-based.

#ifndef TALKALIGN_HMM_H_
#define TALKALIGN_HMM_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "talkalign/corpus.h"
#include "talkalign/embeddings.h"

namespace talkalign {

struct HmmParams {
  double lambda = 0.75;   // decay with sentence distance
  double gamma = 0.5;     // extra factor on backward jumps
  double delta = 0.33;    // stay-probability scale
  double epsilon = 0.1;   // stay-probability floor
  std::optional<double> alpha_override;

  /// Throws Error(kContract) unless every value lies strictly in (0, 1).
  void Validate() const;
};

/// alpha_override if set, else max(delta * (1 - K/T), epsilon).
double ComputeStayProbability(std::size_t num_states, std::size_t transcript_length,
                              const HmmParams &params);

/// Closed form of the row normalization for state `k` (0-based) of K >= 2:
///   beta_k = (1 - alpha)(1 - lambda) /
///            [(1 - lambda^(K-1-k)) + gamma (1 - lambda^k)]
/// May exceed 1 for the boundary states; not clamped.
double ComputeRowCoefficient(std::size_t k, std::size_t num_states, double alpha,
                             const HmmParams &params);

class TransitionModel {
 public:
  TransitionModel() = default;
  TransitionModel(std::size_t num_states, double alpha, const HmmParams &params);

  std::size_t num_states() const { return num_states_; }
  double alpha() const { return alpha_; }
  const std::vector<double> &beta() const { return beta_; }
  const HmmParams &params() const { return params_; }

  /// log T(from, to). Throws Error(kContract) on an out-of-range position.
  double LogProb(std::size_t from, std::size_t to) const;

  /// Unchecked variant used by the decoders. Both decoders evaluate exactly
  /// this expression so their scores agree bit for bit.
  double LogProbUnchecked(std::size_t from, std::size_t to) const {
    if (num_states_ == 1) return 0.0;
    if (to == from) return log_alpha_;
    if (to > from) {
      return log_beta_[from] + static_cast<double>(to - from - 1) * log_lambda_;
    }
    return log_gamma_beta_[from] + static_cast<double>(from - to - 1) * log_lambda_;
  }

  double log_lambda() const { return log_lambda_; }
  double log_beta(std::size_t k) const { return log_beta_[k]; }
  double log_gamma_beta(std::size_t k) const { return log_gamma_beta_[k]; }

 private:
  std::size_t num_states_ = 0;
  double alpha_ = 1.0;
  HmmParams params_;
  std::vector<double> beta_;
  double log_alpha_ = 0.0;
  double log_lambda_ = 0.0;
  std::vector<double> log_beta_;
  std::vector<double> log_gamma_beta_;
};

/// Checked log-transition lookup.
inline double TransitionLogProb(std::size_t from, std::size_t to, const TransitionModel &model) {
  return model.LogProb(from, to);
}

TransitionModel BuildTransition(const StateSpace &space, std::size_t transcript_length,
                                const HmmParams &params);

/// Per-state log emission probabilities over the transcript's distinct token
/// types (row-major, num_states x num_types).
struct EmissionMatrix {
  std::size_t num_states = 0;
  std::vector<std::string> token_types;  // first-occurrence order
  std::unordered_map<std::string, std::size_t> token_type_index;
  std::vector<double> log_scores;
  /// Sentence id behind each state position.
  std::vector<SentenceId> sentence_ids;

  std::size_t num_types() const { return token_types.size(); }
  double at(std::size_t state, std::size_t type) const {
    return log_scores[state * token_types.size() + type];
  }
};

struct EmissionOptions {
  SimilarityKind similarity = SimilarityKind::kRescaledCosine;
  /// Normalize each state row over the observed token types. When false the
  /// raw scores are used as unnormalized likelihoods.
  bool normalize = true;
};

/// Distinct transcript tokens in first-occurrence order.
std::vector<std::string> DistinctTokenTypes(const Transcript &transcript);

/// Assembles an EmissionMatrix from raw non-negative scores (row-major,
/// num_states x types.size()). Normalizes each row when requested.
EmissionMatrix EmissionFromRawScores(std::span<const double> raw, std::vector<std::string> types,
                                     std::vector<SentenceId> sentence_ids, bool normalize);

/// Raw score(k, y) = EmissionScore(sentence_k, y). OpenMP-parallel over
/// states. Transcript must already be OOV-filtered. Throws
/// Error(kEmptyTranscript) when there are no token types.
EmissionMatrix BuildEmission(const StateSpace &space, const PaperDocument &doc,
                             const Transcript &transcript, const EmbeddingTable &table,
                             const EmissionOptions &options = {});

/// Serial reference for BuildEmission(); results are identical.
EmissionMatrix BuildEmissionSerial(const StateSpace &space, const PaperDocument &doc,
                                   const Transcript &transcript, const EmbeddingTable &table,
                                   const EmissionOptions &options = {});

/// log(1/|intro|) on introduction positions, -inf elsewhere.
std::vector<double> StartLogDistribution(const StateSpace &space);

struct SentenceCount {
  SentenceId sentence_id = 0;
  std::size_t count = 0;
  bool operator==(const SentenceCount &) const = default;
};

struct AlignmentResult {
  std::vector<std::size_t> path;  // state position per time step
  double log_prob = -std::numeric_limits<double>::infinity();
  /// Time steps per sentence, ascending sentence id, visited sentences only.
  std::vector<SentenceCount> counts;
  std::size_t dropped_oov = 0;

  bool operator==(const AlignmentResult &) const = default;
};

/// Reference O(T K^2) Viterbi decoder. Ties go to the lowest state position
/// at the last step and then at each backtracking step, so among equally
/// likely paths the one smallest when read backwards in time is returned.
AlignmentResult Viterbi(const EmissionMatrix &emissions, const TransitionModel &transitions,
                        std::span<const double> start, const Transcript &transcript);

/// Reference decoder with the destination loop spread over OpenMP threads.
/// Identical output to Viterbi().
AlignmentResult ViterbiParallel(const EmissionMatrix &emissions,
                                const TransitionModel &transitions,
                                std::span<const double> start, const Transcript &transcript);

/// O(T K) decoder exploiting that log T(k, l) is linear in |l - k| on each
/// side of the diagonal. Produces the same path, log_prob and counts as
/// Viterbi().
AlignmentResult ViterbiFast(const EmissionMatrix &emissions, const TransitionModel &transitions,
                            std::span<const double> start, const Transcript &transcript);

/// Score of a fixed state path under the model (log domain).
double PathLogProb(const EmissionMatrix &emissions, const TransitionModel &transitions,
                   std::span<const double> start, std::span<const std::size_t> observations,
                   std::span<const std::size_t> path);

/// Column index of every transcript token in `emissions`. Throws
/// Error(kContract) for a token without a column.
std::vector<std::size_t> ObservationColumns(const EmissionMatrix &emissions,
                                            const Transcript &transcript);

/// Tallies a state path into per-sentence counts.
std::vector<SentenceCount> CountPath(std::span<const std::size_t> path,
                                     std::span<const SentenceId> sentence_ids);

}  // namespace talkalign

#endif  // TALKALIGN_HMM_H_
