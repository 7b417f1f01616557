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

#ifndef OMGL_AMF_H_
#define OMGL_AMF_H_

#include <vector>

#include "omgl/core.h"
#include "omgl/ftpl.h"
#include "omgl/ledger.h"
#include "omgl/oracles.h"
#include "omgl/rng.h"

namespace omgl {

inline constexpr int kAmfGridPoints = 1000;

// Adversary-moves-first value at x for binary instances:
//   max over gamma in [0, 1] (gamma = P(y = +1)) of
//   min over p in the simplex on the labels H achieves at x of
//   max over (g, h) of E[g(x) (loss(y', y) - loss(h(x), y))].
// Pairs collapse to their (g(x), h(x)) signature, so each gamma is a small
// finite game. gamma ranges over an evenly spaced grid of grid_points values
// plus every crossing of two payoff lines. Throws std::invalid_argument for
// non-binary instances.
double AmfValue(const ProblemInstance& instance, Context x,
                int grid_points = kAmfGridPoints);

// The inner game value at a fixed gamma.
double AmfInnerValue(const ProblemInstance& instance, Context x, double gamma);

// max over (g, h) of sum_t (l~_t(g, h) - v_t). The pair maximum is taken by
// the exact enumerator.
double AmfRegret(const ProblemInstance& instance, const Trace& trace,
                 const std::vector<double>& amf_values);

// Mean of l~_x(pair, (y_pred, y_true)) over a play.
double MeanPlayRegret(const ProblemInstance& instance,
                      const EmpiricalPlay& play, Context x,
                      ActionLabel y_pred, ActionLabel y_true);

struct EpsilonGapResult {
  double gap = 0.0;
  double mean_small = 0.0;
  double mean_large = 0.0;
};

// |mean over an M_small play - mean over an independent M_large play| of
// l~_x at fixed (y_pred, y_true). Requires M_large >= 10 M_small.
EpsilonGapResult EpsilonGap(const ProblemInstance& instance,
                            const GhOracle& oracle, const Trace& history,
                            const FtplConfig& cfg, int m_small, int m_large,
                            Context x, ActionLabel y_pred, ActionLabel y_true,
                            Rng& rng);

}  // namespace omgl

#endif  // OMGL_AMF_H_
