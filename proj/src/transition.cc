// src/transition.cc

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

#include <algorithm>
#include <cmath>
#include <string>

#include "talkalign/errors.h"
#include "talkalign/hmm.h"

namespace talkalign {

namespace {

void RequireOpenUnit(double v, const char *name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::kContract,
                std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

}  // namespace

void HmmParams::Validate() const {
  RequireOpenUnit(lambda, "lambda");
  RequireOpenUnit(gamma, "gamma");
  RequireOpenUnit(delta, "delta");
  RequireOpenUnit(epsilon, "epsilon");
  if (alpha_override) RequireOpenUnit(*alpha_override, "alpha_override");
}

double ComputeStayProbability(std::size_t num_states, std::size_t transcript_length,
                              const HmmParams &params) {
  if (params.alpha_override) return *params.alpha_override;
  if (num_states == 0 || transcript_length == 0) {
    throw Error(ErrorKind::kContract, "stay probability needs K >= 1 and T >= 1");
  }
  const double ratio = static_cast<double>(num_states) / static_cast<double>(transcript_length);
  return std::max(params.delta * (1.0 - ratio), params.epsilon);
}

double ComputeRowCoefficient(std::size_t k, std::size_t num_states, double alpha,
                             const HmmParams &params) {
  if (num_states < 2 || k >= num_states) {
    throw Error(ErrorKind::kContract, "row coefficient needs K >= 2 and k < K");
  }
  const double lambda = params.lambda;
  const double forward = 1.0 - std::pow(lambda, static_cast<double>(num_states - 1 - k));
  const double backward = params.gamma * (1.0 - std::pow(lambda, static_cast<double>(k)));
  return (1.0 - alpha) * (1.0 - lambda) / (forward + backward);
}

TransitionModel::TransitionModel(std::size_t num_states, double alpha, const HmmParams &params)
    : num_states_(num_states), alpha_(alpha), params_(params) {
  if (num_states == 0) throw Error(ErrorKind::kContract, "transition model needs K >= 1");
  if (num_states == 1) {
    alpha_ = 1.0;
    return;
  }
  log_alpha_ = std::log(alpha);
  log_lambda_ = std::log(params.lambda);
  beta_.resize(num_states);
  log_beta_.resize(num_states);
  log_gamma_beta_.resize(num_states);
  for (std::size_t k = 0; k < num_states; ++k) {
    beta_[k] = ComputeRowCoefficient(k, num_states, alpha, params);
    log_beta_[k] = std::log(beta_[k]);
    log_gamma_beta_[k] = std::log(params.gamma * beta_[k]);
  }
}

double TransitionModel::LogProb(std::size_t from, std::size_t to) const {
  if (from >= num_states_ || to >= num_states_) {
    throw Error(ErrorKind::kContract, "transition index out of range: (" + std::to_string(from) +
                                          ", " + std::to_string(to) + ") with K = " +
                                          std::to_string(num_states_));
  }
  return LogProbUnchecked(from, to);
}

TransitionModel BuildTransition(const StateSpace &space, std::size_t transcript_length,
                                const HmmParams &params) {
  params.Validate();
  const double alpha = ComputeStayProbability(space.size(), transcript_length, params);
  return TransitionModel(space.size(), alpha, params);
}

std::vector<double> StartLogDistribution(const StateSpace &space) {
  if (space.intro_states.empty()) {
    throw Error(ErrorKind::kContract, "start distribution needs introduction states");
  }
  std::vector<double> start(space.size(), -std::numeric_limits<double>::infinity());
  const double logp = -std::log(static_cast<double>(space.intro_states.size()));
  for (std::size_t pos : space.intro_states) {
    if (pos >= start.size()) throw Error(ErrorKind::kContract, "introduction state out of range");
    start[pos] = logp;
  }
  return start;
}

}  // namespace talkalign
