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

#ifndef OMGL_GFTPL_H_
#define OMGL_GFTPL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "omgl/core.h"
#include "omgl/ftpl.h"
#include "omgl/oracles.h"
#include "omgl/rng.h"

namespace omgl {

// Weighted fake example (w, x, y, y'): contributes w * l-tilde_x(., (y', y)).
struct FakeExample {
  double weight = 1.0;
  Context x;
  ActionLabel y_true;
  ActionLabel y_pred;
};

// Column j of the perturbation matrix. The key (x, y, y') names the l-tilde
// coordinate the column is checked against.
struct GammaColumn {
  int id = 0;
  Context x;
  ActionLabel y_true;
  ActionLabel y_pred;
  std::vector<FakeExample> dataset;
};

class PerturbationMatrix {
 public:
  explicit PerturbationMatrix(std::vector<GammaColumn> columns);

  int num_columns() const { return static_cast<int>(columns_.size()); }
  const std::vector<GammaColumn>& columns() const { return columns_; }
  const GammaColumn& column(int j) const { return columns_.at(j); }

  // Gamma[(g, h)][j], evaluated from the column dataset.
  double Entry(const ProblemInstance& instance, GroupHypothesisPair pair,
               int j) const;

 private:
  std::vector<GammaColumn> columns_;
};

// One column per (x, y, y') in X x Y x Y, ordered x-major then y then y',
// each holding the singleton dataset {(1, x, y, y')}.
PerturbationMatrix BuildTransductiveGamma(const std::vector<Context>& contexts,
                                          const ProblemInstance& instance);

// Dense |G||H| x N table, rows in canonical pair order. Enumerates G, so it
// runs under the evaluation access role.
Eigen::MatrixXd MaterializeGamma(const PerturbationMatrix& pm,
                                 const ProblemInstance& instance);

// Worst slack of the approximability inequality with unit coordinate
// directions: min over rows r, r' and columns j of
//   (T(r, j) - T(r', j)) - (l~_j(r) - l~_j(r')).
// Zero means 1-approximable along every column key.
double CheckApproximability(const Eigen::MatrixXd& table,
                            const std::vector<GammaColumn>& columns,
                            const ProblemInstance& instance);
double CheckApproximability(const PerturbationMatrix& pm,
                            const ProblemInstance& instance);

// Largest violation of the implementability identity over all row pairs and
// columns:
//   |(T(r, j) - T(r', j)) - sum_dataset w (l~(r) - l~(r'))|.
double CheckImplementability(const Eigen::MatrixXd& table,
                             const std::vector<GammaColumn>& columns,
                             const ProblemInstance& instance);
double CheckImplementability(const PerturbationMatrix& pm,
                             const ProblemInstance& instance);

struct GftplConfig {
  double gamma_approx = 1.0;
  double C = 1.0;
  int M = 50;
  std::uint64_t seed = 0;
  // Draw the Laplace vector once per run instead of once per oracle call.
  bool freeze_noise = false;
};

void ValidateGftplConfig(const GftplConfig& cfg);

// min(1 / gamma, C / sqrt(L* + 1)).
double LearningRate(const GftplConfig& cfg, double l_star_prev);

// max(0, max over pairs of the cumulative l-tilde), by one unperturbed
// oracle call.
double BestGainSoFar(const GhOracle& oracle, const Trace& history);

std::vector<double> DrawLaplaceNoise(int n, Rng& rng);

// Oracle call with the regret records of the history plus every column
// dataset scaled by nu_t[j]. Returns the oracle's pair and objective.
GhResult GftplSampleWithNoise(const GhOracle& oracle, const Trace& history,
                              const PerturbationMatrix& pm,
                              const std::vector<double>& nu_t);

// Draws nu ~ Laplace(1)^N and calls the oracle with nu / eta_t.
GroupHypothesisPair GftplSample(const GhOracle& oracle, const Trace& history,
                                const PerturbationMatrix& pm, double eta_t,
                                Rng& rng);

// Sum of l-tilde over the history plus <Gamma row, nu_t>, each Gamma entry
// evaluated from the l-tilde formula at the column key.
double DirectPerturbedObjective(const ProblemInstance& instance,
                                const Trace& history,
                                const PerturbationMatrix& pm,
                                const std::vector<double>& nu_t,
                                GroupHypothesisPair pair);

struct GftplRoundPlay {
  EmpiricalPlay play;
  double eta_t = 0.0;
  double l_star = 0.0;
};

// Computes eta_t once from BestGainSoFar, then makes M samples with fresh
// noise per sample (or the frozen vector when cfg.freeze_noise). Makes
// exactly M + 1 oracle calls.
GftplRoundPlay GftplEmpiricalPlay(const GhOracle& oracle, const Trace& history,
                                  const PerturbationMatrix& pm,
                                  const GftplConfig& cfg, Rng& rng);

nlohmann::json GammaToJson(const PerturbationMatrix& pm);
PerturbationMatrix GammaFromJson(const nlohmann::json& doc);

}  // namespace omgl

#endif  // OMGL_GFTPL_H_
