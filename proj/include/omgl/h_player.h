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

#ifndef OMGL_H_PLAYER_H_
#define OMGL_H_PLAYER_H_

#include <vector>

#include "omgl/core.h"
#include "omgl/ftpl.h"
#include "omgl/oracles.h"
#include "omgl/rng.h"
#include "omgl/zero_sum.h"

namespace omgl {

// h'_k for each action index k: an opt_h minimizer on the singleton
// {(x, label(k), 1)} under zero-one loss. One oracle call per action.
std::vector<int> RealizableActions(const ProblemInstance& instance,
                                   const HOracle& oracle, Context x);

// L(k, y) = sum_i l-tilde_x(play_i, (h'_k(x), label(y))). Unnormalized.
GameMatrix BuildGameMatrix(const ProblemInstance& instance,
                           const EmpiricalPlay& play, Context x,
                           const std::vector<int>& realizers);

struct HPlayerAction {
  int action_index = 0;
  int hypothesis = 0;
  ActionLabel y_hat;
};

// Samples k ~ probs and predicts h'_k(x), which may differ from label(k)
// when k is not realizable at x.
HPlayerAction Act(const ProblemInstance& instance,
                  const MixedStrategy& strategy,
                  const std::vector<int>& realizers, Context x, Rng& rng);

// Index drawn from a discrete distribution with one uniform draw.
int SampleIndex(const std::vector<double>& probs, Rng& rng);

}  // namespace omgl

#endif  // OMGL_H_PLAYER_H_
