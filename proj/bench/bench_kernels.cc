// bench/bench_kernels.cc

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

// Serial reference kernels against their OpenMP and O(TK) counterparts:
// the three Viterbi decoders and the two emission builders.

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "synthetic.h"
#include "talkalign/hmm.h"

namespace {

using talkalign::testing::MakeRandomInstance;
using talkalign::testing::RandomInstance;

RandomInstance Instance(benchmark::State &state) {
  std::mt19937_64 rng(42);
  const auto K = static_cast<std::size_t>(state.range(0));
  const auto T = static_cast<std::size_t>(state.range(1));
  return MakeRandomInstance(rng, K, T, 200, std::min<std::size_t>(K, 10));
}

template <auto Decoder>
void BM_Decode(benchmark::State &state) {
  const RandomInstance inst = Instance(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decoder(inst.emissions, inst.transitions, inst.start, inst.transcript));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void DecoderArgs(benchmark::internal::Benchmark *b) {
  for (int K : {50, 200, 500}) b->Args({K, 2000});
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_Decode<talkalign::Viterbi>)->Name("viterbi/reference")->Apply(DecoderArgs);
BENCHMARK(BM_Decode<talkalign::ViterbiParallel>)->Name("viterbi/openmp")->Apply(DecoderArgs);
BENCHMARK(BM_Decode<talkalign::ViterbiFast>)->Name("viterbi/linear")->Apply(DecoderArgs);

struct EmissionInputs {
  talkalign::EmbeddingTable table;
  talkalign::PaperDocument doc;
  talkalign::StateSpace space;
  talkalign::Transcript transcript;
};

const EmissionInputs &Inputs() {
  static const EmissionInputs inputs = [] {
    const auto corpus = talkalign::testing::MakeSyntheticCorpus(1, 7);
    EmissionInputs in;
    std::istringstream vectors(corpus.embeddings);
    in.table = talkalign::LoadEmbeddings(vectors);
    in.doc = talkalign::CleanPaper(talkalign::ParsePaper(corpus.documents[0].paper_json));
    in.space = talkalign::BuildStateSpace(in.doc);
    in.transcript =
        talkalign::DropOov(talkalign::ParseTranscript(corpus.documents[0].transcript), in.table);
    return in;
  }();
  return inputs;
}

template <auto Builder>
void BM_Emission(benchmark::State &state) {
  const EmissionInputs &in = Inputs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Builder(in.space, in.doc, in.transcript, in.table, {}));
  }
}

BENCHMARK(BM_Emission<talkalign::BuildEmissionSerial>)->Name("emission/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Emission<talkalign::BuildEmission>)->Name("emission/openmp")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
