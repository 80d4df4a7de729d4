// include/talkalign/embeddings.h

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

#ifndef TALKALIGN_EMBEDDINGS_H_
#define TALKALIGN_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "talkalign/corpus.h"

namespace talkalign {

enum class SimilarityKind {
  kRescaledCosine,  // (cos + 1) / 2
  kClampedCosine,   // max(0, cos)
};

std::string_view SimilarityKindName(SimilarityKind kind);
std::optional<SimilarityKind> ParseSimilarityKind(std::string_view name);

/// Emission floor for sentences with no usable word.
inline constexpr double kEmissionFloor = 1e-8;

/// Immutable word -> unit vector table. Safe for concurrent reads.
class EmbeddingTable {
 public:
  using WordIndex = std::uint32_t;

  EmbeddingTable() = default;

  std::size_t dimension() const { return dim_; }
  std::size_t vocab_size() const { return words_.size(); }
  /// Zero-norm vectors skipped while loading.
  std::size_t dropped_zero_norm() const { return dropped_zero_; }

  std::optional<WordIndex> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }
  std::span<const float> Vector(WordIndex index) const {
    return {data_.data() + static_cast<std::size_t>(index) * dim_, dim_};
  }
  const std::string &Word(WordIndex index) const { return words_[index]; }
  /// Vocabulary in file order.
  const std::vector<std::string> &words() const { return words_; }

  /// Cosine of two stored (unit) vectors.
  double Cosine(WordIndex a, WordIndex b) const;

  /// Appends a vector; normalizes it. Returns false for a duplicate word or a
  /// zero vector (counted in dropped_zero_norm()). Used by the loader and by
  /// tests that build toy tables.
  bool Add(std::string_view word, std::span<const double> values);

 private:
  std::size_t dim_ = 0;
  std::size_t dropped_zero_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, WordIndex, StringHash, std::equal_to<>> index_;
};

/// Reads "word v1 ... vd" lines. Blank lines are skipped. Throws
/// Error(kFormat) naming the 1-based line on a dimension change or bad float,
/// Error(kEmptyTable) when no vector is read.
EmbeddingTable LoadEmbeddings(std::istream &in);
EmbeddingTable LoadEmbeddingsFile(const std::string &path);

/// Word similarity in [0, 1]; 0 when either word is out of vocabulary.
double Similarity(const EmbeddingTable &table, std::string_view y, std::string_view w,
                  SimilarityKind kind = SimilarityKind::kRescaledCosine);

/// Similarity between two in-vocabulary indices.
double SimilarityByIndex(const EmbeddingTable &table, EmbeddingTable::WordIndex y,
                         EmbeddingTable::WordIndex w, SimilarityKind kind);

/// max over the sentence's in-vocabulary tokens of Similarity(y, w), or
/// kEmissionFloor when that max is 0 or nothing is in vocabulary.
double EmissionScore(const EmbeddingTable &table, std::string_view y, const Sentence &sentence,
                     SimilarityKind kind = SimilarityKind::kRescaledCosine);

/// Removes transcript tokens with no vector and records how many were removed.
Transcript DropOov(const Transcript &transcript, const EmbeddingTable &table);

}  // namespace talkalign

#endif  // TALKALIGN_EMBEDDINGS_H_
