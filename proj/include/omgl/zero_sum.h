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

#ifndef OMGL_ZERO_SUM_H_
#define OMGL_ZERO_SUM_H_

#include <vector>

#include <Eigen/Dense>

namespace omgl {

// Payoff to the column player; the row player minimizes. Row k is the
// learner's action k, column y is Nature's label y.
using GameMatrix = Eigen::MatrixXd;

struct MixedStrategy {
  std::vector<double> probs;
  // min_p max_y sum_k p_k A(k, y).
  double value = 0.0;
};

// Exact minimax strategy of the row player. Two rows use the piecewise-linear
// closed form; more rows use a simplex solve. Among optimal strategies the
// one closest to uniform is returned (then lexicographically smallest).
// Rectangular matrices are accepted. Throws std::invalid_argument for fewer
// than two rows or no columns.
MixedStrategy SolveZeroSum(const GameMatrix& a);

// max_y sum_k p_k A(k, y).
double WorstColumnPayoff(const GameMatrix& a, const std::vector<double>& p);

}  // namespace omgl

#endif  // OMGL_ZERO_SUM_H_
