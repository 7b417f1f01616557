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

#include "omgl/core.h"

#include "omgl/zero_sum.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "omgl/rng.h"

namespace omgl {
namespace {

double MaxColumn(const GameMatrix& a, const std::vector<double>& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int y = 0; y < a.cols(); ++y) {
    double v = 0.0;
    for (int k = 0; k < a.rows(); ++k) v += p[k] * a(k, y);
    worst = std::max(worst, v);
  }
  return worst;
}

// min over p in {0, step, ..., 1} of the worst column payoff.
double GridValue2(const GameMatrix& a, double step) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= n; ++i) {
    const double p = static_cast<double>(i) / n;
    best = std::min(best, MaxColumn(a, {p, 1.0 - p}));
  }
  return best;
}

double GridValue3(const GameMatrix& a, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double p0 = static_cast<double>(i) / n;
      const double p1 = static_cast<double>(j) / n;
      best = std::min(best, MaxColumn(a, {p0, p1, 1.0 - p0 - p1}));
    }
  }
  return best;
}

GameMatrix Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  GameMatrix a(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

TEST(SolveZeroSumTest, MatchingPennies) {
  const MixedStrategy s = SolveZeroSum(Matrix({{1, -1}, {-1, 1}}));
  EXPECT_NEAR(s.probs[0], 0.5, 1e-12);
  EXPECT_NEAR(s.probs[1], 0.5, 1e-12);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
}

TEST(SolveZeroSumTest, ZeroMatrixIsUniform) {
  const MixedStrategy s = SolveZeroSum(GameMatrix::Zero(2, 2));
  EXPECT_EQ(s.probs[0], 0.5);
  EXPECT_EQ(s.probs[1], 0.5);
  EXPECT_EQ(s.value, 0.0);
  const MixedStrategy s3 = SolveZeroSum(GameMatrix::Zero(3, 3));
  for (double p : s3.probs) EXPECT_NEAR(p, 1.0 / 3.0, 1e-12);
}

TEST(SolveZeroSumTest, SingleRealizedBenchmark) {
  const GameMatrix a = Matrix({{0, 0}, {1, -1}});
  const MixedStrategy s = SolveZeroSum(a);
  EXPECT_NEAR(s.probs[0], 1.0, 1e-12);
  EXPECT_NEAR(s.probs[1], 0.0, 1e-12);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  EXPECT_NEAR(GridValue2(a, 1e-4), 0.0, 1e-12);
}

TEST(SolveZeroSumTest, OptimalIntervalResolvesTowardUniform) {
  // Any p0 in [0, 1] is optimal: row 0 and row 1 are identical.
  MixedStrategy s = SolveZeroSum(Matrix({{2, 3}, {2, 3}}));
  EXPECT_NEAR(s.probs[0], 0.5, 1e-12);
  // Only p0 = 1 reaches the value 0.
  s = SolveZeroSum(Matrix({{0, 0}, {4, -12}}));
  EXPECT_NEAR(MaxColumn(Matrix({{0, 0}, {4, -12}}), s.probs), 0.0, 1e-12);
  EXPECT_NEAR(s.probs[0], 1.0, 1e-12);
}

TEST(SolveZeroSumTest, FlatFaceTieBreak) {
  // Columns (1, 0) and (0, 1) with an extra dominated column: value 1/2 at
  // p = (1/2, 1/2) only.
  MixedStrategy s = SolveZeroSum(Matrix({{1, 0, 0.2}, {0, 1, 0.2}}));
  EXPECT_NEAR(s.probs[0], 0.5, 1e-12);
  EXPECT_NEAR(s.value, 0.5, 1e-12);
  // Constant column dominates: every p is optimal, so uniform is returned.
  s = SolveZeroSum(Matrix({{0, 0.1, 1}, {0.1, 0, 1}}));
  EXPECT_NEAR(s.probs[0], 0.5, 1e-12);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
}

TEST(SolveZeroSumTest, ThreeRowOptimalFaceProjectsUniform) {
  // Row 2 is strictly worse; rows 0 and 1 tie on the face p2 = 0.
  const GameMatrix a = Matrix({{0, 0}, {0, 0}, {1, 1}});
  const MixedStrategy s = SolveZeroSum(a);
  EXPECT_NEAR(s.probs[0], 0.5, 1e-9);
  EXPECT_NEAR(s.probs[1], 0.5, 1e-9);
  EXPECT_NEAR(s.probs[2], 0.0, 1e-9);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
}

TEST(SolveZeroSumTest, RockPaperScissors) {
  const MixedStrategy s =
      SolveZeroSum(Matrix({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}));
  for (double p : s.probs) EXPECT_NEAR(p, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.value, 0.0, 1e-9);
}

TEST(SolveZeroSumTest, RandomTwoByTwoAgainstGrid) {
  Rng rng = MakeStream(1, StreamTag::kTest);
  for (int trial = 0; trial < 200; ++trial) {
    GameMatrix a(2, 2);
    for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = 2.0 * Uniform01(rng) - 1.0;
    const MixedStrategy s = SolveZeroSum(a);
    EXPECT_NEAR(s.value, GridValue2(a, 1e-4), 1e-3);
    EXPECT_NEAR(MaxColumn(a, s.probs), s.value, 1e-12);
    EXPECT_LE(s.value, GridValue2(a, 1e-4) + 1e-12);
  }
}

TEST(SolveZeroSumTest, RandomRectangularTwoRow) {
  Rng rng = MakeStream(2, StreamTag::kTest);
  for (int trial = 0; trial < 100; ++trial) {
    GameMatrix a(2, 5);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 5; ++j) a(i, j) = 2.0 * Uniform01(rng) - 1.0;
    }
    const MixedStrategy s = SolveZeroSum(a);
    EXPECT_LE(s.value, GridValue2(a, 1e-4) + 1e-12);
    EXPECT_NEAR(s.value, GridValue2(a, 1e-4), 1e-3);
  }
}

TEST(SolveZeroSumTest, RandomThreeByThreeAgainstSimplexGrid) {
  Rng rng = MakeStream(3, StreamTag::kTest);
  for (int trial = 0; trial < 60; ++trial) {
    GameMatrix a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = 2.0 * Uniform01(rng) - 1.0;
    const MixedStrategy s = SolveZeroSum(a);
    const double grid = GridValue3(a, 100);
    EXPECT_NEAR(s.value, grid, 1e-2);
    EXPECT_LE(s.value, grid + 1e-12);
    EXPECT_NEAR(MaxColumn(a, s.probs), s.value, 1e-9);
    double total = 0.0;
    for (double p : s.probs) {
      EXPECT_GE(p, -1e-12);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(SolveZeroSumTest, ScaleAndShiftCovariance) {
  Rng rng = MakeStream(4, StreamTag::kTest);
  for (int trial = 0; trial < 50; ++trial) {
    GameMatrix a(3, 4);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 4; ++j) a(i, j) = 2.0 * Uniform01(rng) - 1.0;
    }
    const MixedStrategy s = SolveZeroSum(a);
    const MixedStrategy t = SolveZeroSum(3.0 * a.array() + 2.0);
    EXPECT_NEAR(t.value, 3.0 * s.value + 2.0, 1e-9);
  }
}

TEST(SolveZeroSumTest, WorstColumnPayoffMatchesValue) {
  const GameMatrix a = Matrix({{3, -1}, {-2, 4}});
  const MixedStrategy s = SolveZeroSum(a);
  EXPECT_NEAR(WorstColumnPayoff(a, s.probs), s.value, 1e-12);
  // Closed form for a 2x2 game without a saddle point.
  EXPECT_NEAR(s.probs[0], 0.6, 1e-12);
  EXPECT_NEAR(s.value, 1.0, 1e-12);
}

TEST(SolveZeroSumTest, InvalidMatricesRejected) {
  EXPECT_THROW(SolveZeroSum(GameMatrix::Zero(1, 2)), std::invalid_argument);
  EXPECT_THROW(SolveZeroSum(GameMatrix::Zero(2, 0)), std::invalid_argument);
  GameMatrix bad = GameMatrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SolveZeroSum(bad), std::invalid_argument);
}

}  // namespace
}  // namespace omgl
