// Copyright 2026 The OMGL Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OMGL_FTPL_H_
#define OMGL_FTPL_H_

#include <cstdint>
#include <vector>

#include "omgl/core.h"
#include "omgl/oracles.h"
#include "omgl/rng.h"

namespace omgl {

// One hallucinated example: a context from the uniform base measure and a
// standard Gaussian weight.
struct Hallucination {
  Context z;
  double gamma = 0.0;
};

struct FtplConfig {
  // Perturbation strength. Zero gives the unperturbed leader.
  double eta = 1.0;
  int n = 64;
  int M = 50;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless eta >= 0, n >= 1, M >= 1.
void ValidateFtplConfig(const FtplConfig& cfg);

// M sampled (group, hypothesis) pairs for one round, in draw order.
using EmpiricalPlay = std::vector<GroupHypothesisPair>;

std::vector<Hallucination> DrawHallucinations(int n, int universe_size,
                                              Rng& rng);

// sum_j eta * gamma_j * g(z_j) * h(z_j) / sqrt(n).
double PerturbationValue(const ProblemInstance& instance,
                         GroupHypothesisPair pair,
                         const std::vector<Hallucination>& hs, double eta);

// Regret records {(x_s, y_hat_s, y_s, 1)} for every past round.
std::vector<RegretRecord> HistoryRecords(const Trace& history);

// Correlation records {(z_j, eta * gamma_j / sqrt(n))}.
std::vector<CorrelationRecord> HallucinationRecords(
    const std::vector<Hallucination>& hs, double eta);

// One perturbed oracle call on the full history.
GroupHypothesisPair FtplSample(const ProblemInstance& instance,
                               const GhOracle& oracle, const Trace& history,
                               const FtplConfig& cfg, Rng& rng);

// M independent samples, each with fresh hallucinations. Call i draws from
// its own stream keyed on one draw from rng and i, so the result does not
// depend on evaluation order.
EmpiricalPlay FtplEmpiricalPlay(const ProblemInstance& instance,
                                const GhOracle& oracle, const Trace& history,
                                const FtplConfig& cfg, Rng& rng);

struct SmoothTheoryParameters {
  double delta = 0.0;
  // T^(1 + delta).
  double M = 0.0;
  // T / sqrt(sigma).
  double n = 0.0;
  // sqrt(T log(T / sigma) / sigma).
  double eta = 0.0;
};

// Advisory values for horizon T, smoothness sigma, K actions. Requires
// T >= 2, sigma in (0, 1], K >= 2.
SmoothTheoryParameters TheoryParameters(int T, double sigma, int K);

double TheoryEta(int T, double sigma);

// max(16, T / sqrt(sigma)) capped at 4096.
int AutoHallucinationCount(int T, double sigma);

}  // namespace omgl

#endif  // OMGL_FTPL_H_
