// src/emission.cc

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

// Emission kernels. The OpenMP and serial builders share the per-state
// routine, so each cell is computed by the same instruction sequence.

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "talkalign/errors.h"
#include "talkalign/hmm.h"

namespace talkalign {

std::vector<std::string> DistinctTokenTypes(const Transcript &transcript) {
  std::vector<std::string> types;
  std::unordered_set<std::string_view> seen;
  for (const auto &token : transcript.tokens) {
    if (seen.insert(token.surface).second) types.push_back(token.surface);
  }
  return types;
}

EmissionMatrix EmissionFromRawScores(std::span<const double> raw, std::vector<std::string> types,
                                     std::vector<SentenceId> sentence_ids, bool normalize) {
  const std::size_t k_states = sentence_ids.size();
  const std::size_t v_types = types.size();
  if (v_types == 0) throw Error(ErrorKind::kEmptyTranscript, "no token types to emit");
  if (k_states == 0 || raw.size() != k_states * v_types) {
    throw Error(ErrorKind::kContract, "raw emission scores have the wrong shape");
  }
  EmissionMatrix m;
  m.num_states = k_states;
  m.sentence_ids = std::move(sentence_ids);
  m.log_scores.resize(raw.size());
  for (std::size_t k = 0; k < k_states; ++k) {
    const double *row = raw.data() + k * v_types;
    double sum = 0.0;
    for (std::size_t v = 0; v < v_types; ++v) {
      if (!(row[v] > 0.0)) throw Error(ErrorKind::kContract, "raw emission scores must be positive");
      sum += row[v];
    }
    double *out = m.log_scores.data() + k * v_types;
    for (std::size_t v = 0; v < v_types; ++v) {
      out[v] = normalize ? std::log(row[v] / sum) : std::log(row[v]);
    }
  }
  m.token_type_index.reserve(v_types);
  for (std::size_t v = 0; v < v_types; ++v) m.token_type_index.emplace(types[v], v);
  m.token_types = std::move(types);
  return m;
}

namespace {

struct EmissionInputs {
  std::vector<std::string> types;
  std::vector<std::optional<EmbeddingTable::WordIndex>> type_index;
  std::vector<std::vector<EmbeddingTable::WordIndex>> state_words;
};

EmissionInputs PrepareInputs(const StateSpace &space, const PaperDocument &doc,
                             const Transcript &transcript, const EmbeddingTable &table) {
  EmissionInputs in;
  in.types = DistinctTokenTypes(transcript);
  if (in.types.empty()) throw Error(ErrorKind::kEmptyTranscript, "no token types to emit");
  in.type_index.reserve(in.types.size());
  for (const auto &t : in.types) in.type_index.push_back(table.Find(t));

  in.state_words.resize(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    auto &words = in.state_words[k];
    for (const auto &w : doc.sentence(space.states[k]).tokens) {
      if (auto idx = table.Find(w)) words.push_back(*idx);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
  }
  return in;
}

// Raw score row for one state; mirrors EmissionScore().
void ScoreState(const EmissionInputs &in, const EmbeddingTable &table, SimilarityKind kind,
                std::size_t k, double *row) {
  const auto &words = in.state_words[k];
  for (std::size_t v = 0; v < in.types.size(); ++v) {
    double best = 0.0;
    if (const auto y = in.type_index[v]) {
      for (auto w : words) best = std::max(best, SimilarityByIndex(table, *y, w, kind));
    }
    row[v] = best > 0.0 ? best : kEmissionFloor;
  }
}

template <bool kParallel>
EmissionMatrix BuildEmissionImpl(const StateSpace &space, const PaperDocument &doc,
                                 const Transcript &transcript, const EmbeddingTable &table,
                                 const EmissionOptions &options) {
  const EmissionInputs in = PrepareInputs(space, doc, transcript, table);
  const std::size_t k_states = space.size();
  const std::size_t v_types = in.types.size();
  std::vector<double> raw(k_states * v_types);
  const auto n = static_cast<std::ptrdiff_t>(k_states);
  if constexpr (kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      ScoreState(in, table, options.similarity, static_cast<std::size_t>(k),
                 raw.data() + static_cast<std::size_t>(k) * v_types);
    }
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      ScoreState(in, table, options.similarity, static_cast<std::size_t>(k),
                 raw.data() + static_cast<std::size_t>(k) * v_types);
    }
  }
  return EmissionFromRawScores(raw, in.types, space.states, options.normalize);
}

}  // namespace

EmissionMatrix BuildEmission(const StateSpace &space, const PaperDocument &doc,
                             const Transcript &transcript, const EmbeddingTable &table,
                             const EmissionOptions &options) {
  return BuildEmissionImpl<true>(space, doc, transcript, table, options);
}

EmissionMatrix BuildEmissionSerial(const StateSpace &space, const PaperDocument &doc,
                                   const Transcript &transcript, const EmbeddingTable &table,
                                   const EmissionOptions &options) {
  return BuildEmissionImpl<false>(space, doc, transcript, table, options);
}

}  // namespace talkalign
