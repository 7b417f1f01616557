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

#ifndef OMGL_ORACLES_H_
#define OMGL_ORACLES_H_

#include <atomic>
#include <cstdint>
#include <vector>

#include "omgl/core.h"

namespace omgl {

// One l-tilde term: weight * g(x) * (l(y_pred, y_true) - l(h(x), y_true)).
struct RegretRecord {
  Context x;
  ActionLabel y_pred;
  ActionLabel y_true;
  double weight = 1.0;
};

// One hallucinated term: weight * g(z) * h(z). The hypothesis output enters
// as its label value (+1/-1 in binary mode, 0..K-1 otherwise).
struct CorrelationRecord {
  Context z;
  double weight = 0.0;
};

struct OracleQuery {
  std::vector<RegretRecord> regret_records;
  std::vector<CorrelationRecord> correlation_records;
  double alpha = 0.0;
};

// Weighted example for the hypothesis oracle.
struct LabeledRecord {
  Context x;
  ActionLabel y;
  double weight = 1.0;
};

struct GhResult {
  GroupHypothesisPair pair;
  double objective = 0.0;
};

// Canonical order over G x H is hypothesis-major: pair (g, h) has index
// h * |G| + g. Exact oracles return the lowest-index pair whose objective is
// within 1e-10 * (sum of |weights|) of the maximum.
int CanonicalIndex(const ProblemInstance& instance, GroupHypothesisPair pair);
GroupHypothesisPair PairAt(const ProblemInstance& instance, int index);

// Objective of one pair under the query, summed record by record.
double GhObjective(const ProblemInstance& instance, const OracleQuery& q,
                   GroupHypothesisPair pair);

double TotalAbsWeight(const OracleQuery& q);

class HOracle {
 public:
  virtual ~HOracle() = default;
  // Index of a minimizer of sum_i w_i * loss(h(x_i), y_i) over H.
  virtual int OptH(const std::vector<LabeledRecord>& records,
                   const LossTable& loss) const = 0;
  std::int64_t calls() const { return calls_.load(); }

 protected:
  void Count() const { calls_.fetch_add(1); }

 private:
  mutable std::atomic<std::int64_t> calls_{0};
};

class GhOracle {
 public:
  virtual ~GhOracle() = default;
  virtual GhResult OptGh(const OracleQuery& q) const = 0;
  std::int64_t calls() const { return calls_.load(); }

 protected:
  void Count() const { calls_.fetch_add(1); }

 private:
  mutable std::atomic<std::int64_t> calls_{0};
};

// Exact minimization by per-context aggregation and a scan over H.
class ExactHOracle : public HOracle {
 public:
  explicit ExactHOracle(const ProblemInstance& instance);
  int OptH(const std::vector<LabeledRecord>& records,
           const LossTable& loss) const override;

 private:
  const ProblemInstance& instance_;
  // action index of h(x), row-major by hypothesis.
  std::vector<int> action_of_;
};

// Exact maximization over G x H. Records are folded into a per-context,
// per-action score; each hypothesis then induces a score sequence over X
// whose group sums are read off prefix sums. When G is exactly the set of
// all intervals, the per-hypothesis maximum is a maximum-subarray problem.
class ExactGhOracle : public GhOracle {
 public:
  explicit ExactGhOracle(const ProblemInstance& instance);
  GhResult OptGh(const OracleQuery& q) const override;

  bool uses_interval_fast_path() const { return all_intervals_; }

 private:
  const ProblemInstance& instance_;
  int m_;
  int k_;
  std::vector<int> action_of_;
  std::vector<double> action_value_;
  // Cached group structure.
  std::vector<Group> groups_;
  bool all_intervals_ = false;
  bool any_set_ = false;
};

// Exhaustive scan over every pair in canonical order. Test and diagnostic
// use only.
GhResult BruteForceOptGh(const ProblemInstance& instance, const OracleQuery& q);

// Weighted loss of one hypothesis, summed record by record.
double WeightedLoss(const ProblemInstance& instance, int hypothesis,
                    const std::vector<LabeledRecord>& records,
                    const LossTable& loss);

}  // namespace omgl

#endif  // OMGL_ORACLES_H_
