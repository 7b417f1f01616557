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

#include "omgl/ftpl.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "test_util.h"

namespace omgl {
namespace {

TEST(DrawHallucinationsTest, Count) {
  Rng rng = MakeStream(1, StreamTag::kTest);
  EXPECT_EQ(DrawHallucinations(3, 8, rng).size(), 3u);
  EXPECT_THROW(DrawHallucinations(0, 8, rng), std::invalid_argument);
}

TEST(DrawHallucinationsTest, SameStateSameList) {
  Rng rng = MakeStream(2, StreamTag::kTest);
  Rng copy = rng;
  const auto a = DrawHallucinations(10, 8, rng);
  const auto b = DrawHallucinations(10, 8, copy);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(a[i].z, b[i].z);
    EXPECT_EQ(a[i].gamma, b[i].gamma);
  }
}

TEST(DrawHallucinationsTest, GaussianMomentsAndUniformContexts) {
  Rng rng = MakeStream(3, StreamTag::kTest);
  const auto hs = DrawHallucinations(100000, 4, rng);
  double mean = 0.0, sq = 0.0;
  std::vector<int> counts(4, 0);
  for (const auto& h : hs) {
    mean += h.gamma;
    sq += h.gamma * h.gamma;
    ++counts[h.z.index];
  }
  mean /= hs.size();
  sq /= hs.size();
  EXPECT_GT(mean, -0.02);
  EXPECT_LT(mean, 0.02);
  EXPECT_NEAR(sq, 1.0, 0.02);
  for (int c : counts) EXPECT_NEAR(c / 100000.0, 0.25, 0.01);
}

TEST(PerturbationValueTest, InactiveGroupIsZero) {
  ProblemInstance inst = MakeThresholdIntervalInstance(4);
  // Group 0 is [0, 0]; no hallucination lands there.
  std::vector<Hallucination> hs = {{Context{1}, 0.7}, {Context{3}, -2.0}};
  EXPECT_EQ(PerturbationValue(inst, {0, 0}, hs, 5.0), 0.0);
}

TEST(PerturbationValueTest, HandArithmetic) {
  // g = [0, 2], h = threshold(1, +1): g(z)h(z) = (1, 1, 0, -1) at
  // z = (1, 2, 3, 0).
  ProblemInstance inst = MakeThresholdIntervalInstance(4);
  int g = -1;
  for (int i = 0; i < inst.num_groups(); ++i) {
    if (inst.group(i) == Group::Interval(0, 2)) g = i;
  }
  ASSERT_GE(g, 0);
  const int h = 2;  // threshold(1, +1)
  ASSERT_EQ(inst.hypothesis(h), Hypothesis::Threshold(1, 1));
  std::vector<Hallucination> hs = {
      {Context{1}, 1.0}, {Context{2}, -1.0}, {Context{3}, 1.0}, {Context{0}, 1.0}};
  // 2 * (1 - 1 + 0 - 1) / sqrt(4).
  EXPECT_DOUBLE_EQ(PerturbationValue(inst, {g, h}, hs, 2.0), -1.0);
}

TEST(PerturbationValueTest, OddInGammaLinearInEta) {
  ProblemInstance inst = MakeThresholdIntervalInstance(8);
  Rng rng = MakeStream(4, StreamTag::kTest);
  for (int trial = 0; trial < 50; ++trial) {
    auto hs = DrawHallucinations(16, 8, rng);
    auto neg = hs;
    for (auto& h : neg) h.gamma = -h.gamma;
    const GroupHypothesisPair pair{UniformIndex(rng, inst.num_groups()),
                                   UniformIndex(rng, inst.num_hypotheses())};
    const double v = PerturbationValue(inst, pair, hs, 1.5);
    EXPECT_EQ(PerturbationValue(inst, pair, neg, 1.5), -v);
    EXPECT_NEAR(PerturbationValue(inst, pair, hs, 3.0), 2.0 * v, 1e-12);
  }
}

TEST(PerturbationValueTest, AgreesWithCorrelationRecords) {
  ProblemInstance inst = MakeThresholdIntervalInstance(8);
  Rng rng = MakeStream(5, StreamTag::kTest);
  const auto hs = DrawHallucinations(20, 8, rng);
  OracleQuery q;
  q.correlation_records = HallucinationRecords(hs, 2.5);
  for (int g = 0; g < inst.num_groups(); g += 3) {
    for (int h = 0; h < inst.num_hypotheses(); h += 2) {
      EXPECT_NEAR(PerturbationValue(inst, {g, h}, hs, 2.5),
                  testing::RefObjective(inst, q, g, h), 1e-12);
    }
  }
}

TEST(FtplSampleTest, EmptyHistoryZeroEtaGivesFirstPair) {
  ProblemInstance inst = MakeThresholdIntervalInstance(6);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 0.0;
  Rng rng = MakeStream(6, StreamTag::kTest);
  EXPECT_EQ(FtplSample(inst, oracle, {}, cfg, rng), (GroupHypothesisPair{0, 0}));
}

TEST(FtplSampleTest, EqualsBruteForceOnTheSameQuery) {
  ProblemInstance inst = MakeThresholdIntervalInstance(6);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 3.0;
  cfg.n = 12;
  Trace history = {testing::Round(1, 2, 1, -1), testing::Round(2, 4, -1, -1),
                   testing::Round(3, 0, 1, 1)};
  Rng rng = MakeStream(7, StreamTag::kTest);
  for (int trial = 0; trial < 50; ++trial) {
    Rng replay = rng;
    const GroupHypothesisPair got = FtplSample(inst, oracle, history, cfg, rng);
    OracleQuery q;
    q.regret_records = HistoryRecords(history);
    q.correlation_records =
        HallucinationRecords(DrawHallucinations(cfg.n, 6, replay), cfg.eta);
    EXPECT_EQ(got, BruteForceOptGh(inst, q).pair);
  }
}

TEST(FtplSampleTest, TwoRoundHandTraceWithoutPerturbation) {
  ProblemInstance inst = MakeThresholdIntervalInstance(4);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 0.0;
  // Round 1 at x=1: predicted +1, truth -1. Round 2 at x=3: predicted -1,
  // truth +1. The best pairs gain 1 on each round: a group covering {1, 3}
  // and a hypothesis with h(1) = -1, h(3) = +1.
  Trace history = {testing::Round(1, 1, 1, -1), testing::Round(2, 3, -1, 1)};
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  const std::vector<double> table = testing::RefObjectiveTable(inst, q);
  EXPECT_EQ(testing::RefMax(table), 2.0);
  int first = -1;
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i] == 2.0) {
      first = static_cast<int>(i);
      break;
    }
  }
  Rng rng = MakeStream(8, StreamTag::kTest);
  const GroupHypothesisPair got = FtplSample(inst, oracle, history, cfg, rng);
  EXPECT_EQ(CanonicalIndex(inst, got), first);
  EXPECT_TRUE(inst.group(got.group).Contains(Context{1}));
  EXPECT_TRUE(inst.group(got.group).Contains(Context{3}));
}

TEST(EmpiricalPlayTest, SizeAndCalls) {
  ProblemInstance inst = MakeThresholdIntervalInstance(6);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.M = 1;
  Rng rng = MakeStream(9, StreamTag::kTest);
  EXPECT_EQ(FtplEmpiricalPlay(inst, oracle, {}, cfg, rng).size(), 1u);
  cfg.M = 17;
  EXPECT_EQ(FtplEmpiricalPlay(inst, oracle, {}, cfg, rng).size(), 17u);
  EXPECT_EQ(oracle.calls(), 18);
}

TEST(EmpiricalPlayTest, ZeroEtaGivesIdenticalPairs) {
  ProblemInstance inst = MakeThresholdIntervalInstance(6);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 0.0;
  cfg.M = 25;
  Trace history = {testing::Round(1, 2, 1, -1)};
  Rng rng = MakeStream(10, StreamTag::kTest);
  const EmpiricalPlay play = FtplEmpiricalPlay(inst, oracle, history, cfg, rng);
  for (const auto& p : play) EXPECT_EQ(p, play.front());
}

TEST(EmpiricalPlayTest, SameSeedSamePlay) {
  ProblemInstance inst = MakeThresholdIntervalInstance(8);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 4.0;
  cfg.M = 30;
  Trace history = {testing::Round(1, 2, 1, -1), testing::Round(2, 5, 1, 1)};
  Rng a = MakeStream(11, StreamTag::kTest);
  Rng b = MakeStream(11, StreamTag::kTest);
  EXPECT_EQ(FtplEmpiricalPlay(inst, oracle, history, cfg, a),
            FtplEmpiricalPlay(inst, oracle, history, cfg, b));
}

TEST(EmpiricalPlayTest, FrequenciesStabilize) {
  ProblemInstance inst = MakeThresholdIntervalInstance(8);
  ExactGhOracle oracle(inst);
  FtplConfig cfg;
  cfg.eta = 2.0;
  cfg.n = 16;
  cfg.M = 10000;
  Trace history = {testing::Round(1, 3, 1, -1)};
  Rng a = MakeStream(12, StreamTag::kTest);
  Rng b = MakeStream(13, StreamTag::kTest);
  std::map<GroupHypothesisPair, double> fa, fb;
  for (const auto& p : FtplEmpiricalPlay(inst, oracle, history, cfg, a)) fa[p] += 1e-4;
  for (const auto& p : FtplEmpiricalPlay(inst, oracle, history, cfg, b)) fb[p] += 1e-4;
  for (const auto& [pair, f] : fa) EXPECT_NEAR(f, fb[pair], 0.05);
  for (const auto& [pair, f] : fb) EXPECT_NEAR(f, fa[pair], 0.05);
}

TEST(FtplConfigTest, Validation) {
  FtplConfig cfg;
  cfg.eta = -1.0;
  EXPECT_THROW(ValidateFtplConfig(cfg), std::invalid_argument);
  cfg.eta = 0.0;
  EXPECT_NO_THROW(ValidateFtplConfig(cfg));
  cfg.n = 0;
  EXPECT_THROW(ValidateFtplConfig(cfg), std::invalid_argument);
  cfg.n = 1;
  cfg.M = 0;
  EXPECT_THROW(ValidateFtplConfig(cfg), std::invalid_argument);
}

TEST(TheoryParametersTest, HallucinationCount) {
  EXPECT_DOUBLE_EQ(TheoryParameters(100, 1.0, 2).n, 100.0);
  EXPECT_DOUBLE_EQ(TheoryParameters(100, 0.25, 2).n, 200.0);
}

TEST(TheoryParametersTest, EtaAndDeltaFormulas) {
  for (int T : {2, 10, 100, 2000}) {
    for (double sigma : {1.0, 0.5, 0.1}) {
      for (int K : {2, 3, 10}) {
        const SmoothTheoryParameters p = TheoryParameters(T, sigma, K);
        const double eta = std::sqrt(T * std::log(T / sigma) / sigma);
        const double delta =
            std::log(2 * std::log(K) + std::log(T) / 2) / (2 * std::log(T));
        EXPECT_NEAR(p.eta, eta, 1e-9);
        EXPECT_NEAR(p.delta, delta, 1e-12);
        EXPECT_NEAR(std::log(p.M), (1 + delta) * std::log(T), 1e-9);
      }
    }
  }
}

TEST(TheoryParametersTest, Preconditions) {
  EXPECT_THROW(TheoryParameters(1, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(TheoryParameters(10, 0.0, 2), std::invalid_argument);
  EXPECT_THROW(TheoryParameters(10, 1.5, 2), std::invalid_argument);
  EXPECT_THROW(TheoryParameters(10, 1.0, 1), std::invalid_argument);
}

TEST(TheoryParametersTest, AutoHallucinationCount) {
  EXPECT_EQ(AutoHallucinationCount(5, 1.0), 16);
  EXPECT_EQ(AutoHallucinationCount(100, 0.25), 200);
  EXPECT_EQ(AutoHallucinationCount(100000, 1.0), 4096);
}

}  // namespace
}  // namespace omgl
