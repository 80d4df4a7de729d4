// src/embeddings.cc

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

#include "talkalign/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "talkalign/errors.h"
#include "talkalign/text.h"

namespace talkalign {

std::string_view SimilarityKindName(SimilarityKind kind) {
  return kind == SimilarityKind::kClampedCosine ? "clamped_cosine" : "rescaled_cosine";
}

std::optional<SimilarityKind> ParseSimilarityKind(std::string_view name) {
  if (name == "rescaled_cosine") return SimilarityKind::kRescaledCosine;
  if (name == "clamped_cosine") return SimilarityKind::kClampedCosine;
  return std::nullopt;
}

std::optional<EmbeddingTable::WordIndex> EmbeddingTable::Find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double EmbeddingTable::Cosine(WordIndex a, WordIndex b) const {
  const float *pa = data_.data() + static_cast<std::size_t>(a) * dim_;
  const float *pb = data_.data() + static_cast<std::size_t>(b) * dim_;
  double dot = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) dot += static_cast<double>(pa[i]) * pb[i];
  return std::clamp(dot, -1.0, 1.0);
}

bool EmbeddingTable::Add(std::string_view word, std::span<const double> values) {
  if (dim_ == 0) dim_ = values.size();
  if (values.size() != dim_ || dim_ == 0) {
    throw Error(ErrorKind::kFormat, "vector for \"" + std::string(word) + "\" has dimension " +
                                        std::to_string(values.size()) + ", expected " +
                                        std::to_string(dim_));
  }
  if (index_.contains(word)) return false;
  double norm2 = 0.0;
  for (double v : values) norm2 += v * v;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    ++dropped_zero_;
    return false;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  const auto index = static_cast<WordIndex>(words_.size());
  words_.emplace_back(word);
  index_.emplace(words_.back(), index);
  for (double v : values) data_.push_back(static_cast<float>(v * inv));
  return true;
}

EmbeddingTable LoadEmbeddings(std::istream &in) {
  EmbeddingTable table;
  std::string line;
  std::vector<double> values;
  std::size_t line_no = 0;
  std::size_t expected_dim = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    const std::string where = "embeddings line " + std::to_string(line_no);
    if (fields.size() < 2) throw Error(ErrorKind::kFormat, where + ": no vector values");
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto f = fields[i];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error(ErrorKind::kFormat, where + ": cannot parse \"" + std::string(f) + "\"");
      }
      values.push_back(v);
    }
    if (expected_dim == 0) expected_dim = values.size();
    if (values.size() != expected_dim) {
      throw Error(ErrorKind::kFormat, where + ": dimension " + std::to_string(values.size()) +
                                          " differs from " + std::to_string(expected_dim));
    }
    any = true;
    table.Add(fields[0], values);
  }
  if (!any || table.vocab_size() == 0) throw Error(ErrorKind::kEmptyTable, "no embedding vectors read");
  return table;
}

EmbeddingTable LoadEmbeddingsFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open embeddings file " + path);
  return LoadEmbeddings(in);
}

double SimilarityByIndex(const EmbeddingTable &table, EmbeddingTable::WordIndex y,
                         EmbeddingTable::WordIndex w, SimilarityKind kind) {
  const double cos = y == w ? 1.0 : table.Cosine(y, w);
  if (kind == SimilarityKind::kClampedCosine) return std::max(0.0, cos);
  return (cos + 1.0) / 2.0;
}

double Similarity(const EmbeddingTable &table, std::string_view y, std::string_view w,
                  SimilarityKind kind) {
  const auto iy = table.Find(y);
  const auto iw = table.Find(w);
  if (!iy || !iw) return 0.0;
  return SimilarityByIndex(table, *iy, *iw, kind);
}

double EmissionScore(const EmbeddingTable &table, std::string_view y, const Sentence &sentence,
                     SimilarityKind kind) {
  const auto iy = table.Find(y);
  double best = 0.0;
  if (iy) {
    for (const auto &w : sentence.tokens) {
      if (auto iw = table.Find(w)) best = std::max(best, SimilarityByIndex(table, *iy, *iw, kind));
    }
  }
  return best > 0.0 ? best : kEmissionFloor;
}

Transcript DropOov(const Transcript &transcript, const EmbeddingTable &table) {
  Transcript out;
  out.dropped_oov = transcript.dropped_oov;
  for (const auto &token : transcript.tokens) {
    if (table.Contains(token.surface)) {
      out.tokens.push_back(token);
    } else {
      ++out.dropped_oov;
    }
  }
  return out;
}

}  // namespace talkalign
