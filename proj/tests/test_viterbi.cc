// tests/test_viterbi.cc

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

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.h"
#include "synthetic.h"
#include "talkalign/errors.h"
#include "talkalign/hmm.h"

using namespace talkalign;
using talkalign::testing::BruteForceDecode;
using talkalign::testing::MakeRandomInstance;
using talkalign::testing::MakeTranscript;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> StartOver(std::size_t K, std::vector<std::size_t> intro) {
  std::vector<double> start(K, kNegInf);
  for (auto k : intro) start[k] = -std::log(double(intro.size()));
  return start;
}

std::vector<std::size_t> Iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<SentenceId> Ids(std::size_t n) {
  std::vector<SentenceId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<SentenceId>(i);
  return v;
}

}  // namespace

TEST_CASE("single state decodes to the constant path") {
  const std::vector<double> raw = {0.4, 0.7};
  const EmissionMatrix e = EmissionFromRawScores(raw, {"a", "b"}, {5}, true);
  const TransitionModel tr(1, 1.0, HmmParams{});
  const Transcript tx = MakeTranscript({"a", "b", "b", "a", "a"});
  const auto start = StartOver(1, {0});
  const AlignmentResult r = Viterbi(e, tr, start, tx);
  CHECK(r.path == std::vector<std::size_t>(5, 0));
  CHECK(r.counts == std::vector<SentenceCount>{{5, 5}});
  CHECK(ViterbiFast(e, tr, start, tx) == r);
  CHECK(ViterbiParallel(e, tr, start, tx) == r);
}

TEST_CASE("peaked emissions recover the intended path") {
  // Token i is emitted almost only by its matching state.
  const std::vector<double> raw = {1.0, 1e-4, 1e-4,  //
                                   1e-4, 1.0, 1e-4,  //
                                   1e-4, 1e-4, 1.0};
  const EmissionMatrix e = EmissionFromRawScores(raw, {"s0", "s1", "s2"}, {0, 1, 2}, true);
  const TransitionModel tr(3, 0.3, HmmParams{});
  const Transcript tx = MakeTranscript({"s0", "s0", "s1", "s2"});
  const auto start = StartOver(3, {0, 1, 2});
  const AlignmentResult r = Viterbi(e, tr, start, tx);
  CHECK(r.path == std::vector<std::size_t>{0, 0, 1, 2});
  const auto obs = ObservationColumns(e, tx);
  const auto brute = BruteForceDecode(e, tr, start, obs);
  CHECK(brute.path == r.path);
  CHECK(brute.log_prob == r.log_prob);
  CHECK(r.counts == std::vector<SentenceCount>{{0, 2}, {1, 1}, {2, 1}});
}

TEST_CASE("uniform emissions with a dominant stay probability stay put") {
  const std::size_t K = 10, T = 6;
  const EmissionMatrix e = EmissionFromRawScores(std::vector<double>(K, 1.0), {"u"}, Ids(K), true);
  HmmParams p;
  p.alpha_override = 0.35;
  StateSpace space;
  space.states = Ids(K);
  space.intro_states = {0, 1};
  const TransitionModel tr = BuildTransition(space, T, p);
  const auto start = StartLogDistribution(space);
  const Transcript tx = MakeTranscript(std::vector<std::string>(T, "u"));
  const AlignmentResult r = Viterbi(e, tr, start, tx);
  CHECK(r.path == std::vector<std::size_t>(T, 0));
  const auto brute = BruteForceDecode(e, tr, start, ObservationColumns(e, tx));
  CHECK(brute.path == r.path);
  CHECK(brute.log_prob == r.log_prob);
  // States 0 and 1 tie; the lowest position wins.
  CHECK(brute.num_optimal == 2);
  CHECK(ViterbiFast(e, tr, start, tx) == r);
}

TEST_CASE("reference decoder matches exhaustive enumeration") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> kd(1, 4), td(1, 6), vd(1, 5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t K = kd(rng), T = td(rng);
    std::uniform_int_distribution<std::size_t> nid(1, K);
    auto inst = MakeRandomInstance(rng, K, T, vd(rng), nid(rng));
    const AlignmentResult r = Viterbi(inst.emissions, inst.transitions, inst.start, inst.transcript);
    const auto brute = BruteForceDecode(inst.emissions, inst.transitions, inst.start, inst.obs);
    CAPTURE(trial);
    CHECK(r.log_prob == brute.log_prob);
    CHECK(r.path == brute.path);
    CHECK(r.log_prob ==
          PathLogProb(inst.emissions, inst.transitions, inst.start, inst.obs, r.path));
  }
}

TEST_CASE("ties resolve to the backward-lexicographic first optimum") {
  // All-equal emissions and a symmetric instance produce many ties.
  std::mt19937_64 rng(47);
  for (std::size_t K = 2; K <= 4; ++K) {
    for (std::size_t T = 1; T <= 5; ++T) {
      const EmissionMatrix e =
          EmissionFromRawScores(std::vector<double>(K, 1.0), {"u"}, Ids(K), true);
      for (double alpha : {0.05, 0.3, 0.6}) {
        const TransitionModel tr(K, alpha, HmmParams{});
        const auto start = StartOver(K, Iota(K));
        const Transcript tx = MakeTranscript(std::vector<std::string>(T, "u"));
        const AlignmentResult r = Viterbi(e, tr, start, tx);
        const auto brute = BruteForceDecode(e, tr, start, ObservationColumns(e, tx));
        CHECK(r.path == brute.path);
        CHECK(ViterbiFast(e, tr, start, tx) == r);
        CHECK(ViterbiParallel(e, tr, start, tx) == r);
      }
    }
  }
}

TEST_CASE("fast and parallel decoders are identical to the reference") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::size_t> kd(2, 60), td(2, 150), vd(1, 40);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t K = kd(rng), T = td(rng);
    std::uniform_int_distribution<std::size_t> nid(1, std::min<std::size_t>(K, 5));
    auto inst = MakeRandomInstance(rng, K, T, vd(rng), nid(rng));
    const AlignmentResult ref =
        Viterbi(inst.emissions, inst.transitions, inst.start, inst.transcript);
    CAPTURE(trial);
    CHECK(ViterbiFast(inst.emissions, inst.transitions, inst.start, inst.transcript) == ref);
    CHECK(ViterbiParallel(inst.emissions, inst.transitions, inst.start, inst.transcript) == ref);
  }
}

TEST_CASE("fast decoder stays exact under heavy ties and extreme parameters") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> kd(2, 30), td(2, 40);
  std::uniform_int_distribution<int> level(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = kd(rng), T = td(rng), V = 3;
    std::vector<double> raw(K * V);
    for (auto &x : raw) x = 0.25 * (1 + level(rng));  // few distinct values
    std::vector<std::string> types = {"a", "b", "c"};
    const EmissionMatrix e = EmissionFromRawScores(raw, types, Ids(K), trial % 2 == 0);
    HmmParams p;
    p.lambda = (trial % 3 == 0) ? 0.999 : (trial % 3 == 1 ? 0.01 : 0.5);
    p.gamma = (trial % 5 == 0) ? 0.999 : 0.5;
    const double alpha = (trial % 4 == 0) ? 0.001 : 0.3;
    const TransitionModel tr(K, alpha, p);
    std::vector<std::string> tokens;
    for (std::size_t t = 0; t < T; ++t) tokens.push_back(types[level(rng)]);
    const Transcript tx = MakeTranscript(tokens);
    const auto start = StartOver(K, trial % 2 ? Iota(K) : std::vector<std::size_t>{0});
    const AlignmentResult ref = Viterbi(e, tr, start, tx);
    CAPTURE(trial);
    CHECK(ViterbiFast(e, tr, start, tx) == ref);
  }
}

TEST_CASE("decoders reject malformed inputs") {
  const EmissionMatrix e = EmissionFromRawScores(std::vector<double>{1.0, 1.0}, {"a"}, {0, 1}, true);
  const TransitionModel tr(2, 0.3, HmmParams{});
  const auto start = StartOver(2, {0});
  auto kind_of = [&](auto &&fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  CHECK(kind_of([&] { Viterbi(e, tr, start, Transcript{}); }) == ErrorKind::kContract);
  CHECK(kind_of([&] { ViterbiFast(e, tr, start, MakeTranscript({"zz"})); }) == ErrorKind::kContract);
  const TransitionModel wrong(3, 0.3, HmmParams{});
  CHECK(kind_of([&] { Viterbi(e, wrong, start, MakeTranscript({"a"})); }) == ErrorKind::kContract);
  const std::vector<double> short_start = {0.0};
  CHECK(kind_of([&] { ViterbiFast(e, tr, short_start, MakeTranscript({"a"})); }) ==
        ErrorKind::kContract);
}

TEST_CASE("count_path tallies by sentence id") {
  const std::vector<std::size_t> path = {0, 0, 2, 2, 2, 1};
  const std::vector<SentenceId> ids = {10, 4, 7};
  CHECK(CountPath(path, ids) == std::vector<SentenceCount>{{4, 1}, {7, 3}, {10, 2}});
}
