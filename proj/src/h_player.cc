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

#include "omgl/h_player.h"

#include <stdexcept>

namespace omgl {

std::vector<int> RealizableActions(const ProblemInstance& instance,
                                   const HOracle& oracle, Context x) {
  instance.CheckContext(x);
  const int k = instance.actions().size();
  const LossTable zero_one = LossTable::ZeroOne(k);
  std::vector<int> realizers(k);
  for (int a = 0; a < k; ++a) {
    realizers[a] = oracle.OptH({{x, instance.actions().label(a), 1.0}}, zero_one);
  }
  return realizers;
}

GameMatrix BuildGameMatrix(const ProblemInstance& instance,
                           const EmpiricalPlay& play, Context x,
                           const std::vector<int>& realizers) {
  if (play.empty()) throw std::invalid_argument("empty play");
  const int k = instance.actions().size();
  const LossTable& loss = instance.loss();
  // Active pairs by the action index of their benchmark at x.
  std::vector<int> active(k, 0);
  for (const GroupHypothesisPair& pair : play) {
    if (instance.group(pair.group).Contains(x)) {
      ++active[instance.ActionIndex(instance.hypothesis(pair.hypothesis).Eval(x))];
    }
  }
  GameMatrix m = GameMatrix::Zero(k, k);
  for (int row = 0; row < k; ++row) {
    const int played =
        instance.ActionIndex(instance.hypothesis(realizers[row]).Eval(x));
    for (int y = 0; y < k; ++y) {
      double total = 0.0;
      for (int b = 0; b < k; ++b) {
        if (active[b]) total += active[b] * (loss(played, y) - loss(b, y));
      }
      m(row, y) = total;
    }
  }
  return m;
}

int SampleIndex(const std::vector<double>& probs, Rng& rng) {
  const double u = Uniform01(rng);
  double cumulative = 0.0;
  int last = 0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return last;
}

HPlayerAction Act(const ProblemInstance& instance,
                  const MixedStrategy& strategy,
                  const std::vector<int>& realizers, Context x, Rng& rng) {
  HPlayerAction action;
  action.action_index = SampleIndex(strategy.probs, rng);
  action.hypothesis = realizers.at(action.action_index);
  action.y_hat = instance.hypothesis(action.hypothesis).Eval(x);
  return action;
}

}  // namespace omgl
