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

#ifndef OMGL_BASELINES_H_
#define OMGL_BASELINES_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "omgl/core.h"
#include "omgl/oracles.h"

namespace omgl {

// Follow the leader on H: opt_h over the whole history (weight 1, instance
// loss), evaluated at x. Empty history uses the first hypothesis.
ActionLabel FtlPredict(const ProblemInstance& instance, const HOracle& oracle,
                       const Trace& history, Context x);

using Predictor = std::function<ActionLabel(Context)>;

// A batch learner that maps a sample to a predictor over the universe.
class BatchMultiGroupLearner {
 public:
  virtual ~BatchMultiGroupLearner() = default;
  // Must return a predictor for an empty sample too. Failures throw.
  virtual Predictor Fit(const std::vector<LabeledRecord>& samples) = 0;
  virtual std::string name() const = 0;
  // Free-form description of the per-group excess-risk guarantee.
  virtual std::string contract() const { return ""; }
};

// Empirical risk minimization through opt_h. Identical to FTL when wrapped.
class ErmAdapter : public BatchMultiGroupLearner {
 public:
  ErmAdapter(const ProblemInstance& instance, const HOracle& oracle)
      : instance_(instance), oracle_(oracle) {}
  Predictor Fit(const std::vector<LabeledRecord>& samples) override;
  std::string name() const override { return "erm"; }
  std::string contract() const override {
    return "no per-group guarantee; single ERM hypothesis";
  }

 private:
  const ProblemInstance& instance_;
  const HOracle& oracle_;
};

// Always predicts one label.
class ConstantLearner : public BatchMultiGroupLearner {
 public:
  explicit ConstantLearner(ActionLabel label) : label_(label) {}
  Predictor Fit(const std::vector<LabeledRecord>& samples) override;
  std::string name() const override { return "constant"; }

 private:
  ActionLabel label_;
};

// Refits the batch learner on rounds 1..t-1 every round and predicts at x_t.
class OnlineBatchWrapper {
 public:
  explicit OnlineBatchWrapper(BatchMultiGroupLearner& learner)
      : learner_(learner) {}

  ActionLabel Predict(const ProblemInstance& instance, const Trace& history,
                      Context x);
  int retrain_count() const { return retrains_; }

 private:
  BatchMultiGroupLearner& learner_;
  int retrains_ = 0;
};

std::vector<LabeledRecord> LabeledHistory(const Trace& history);

}  // namespace omgl

#endif  // OMGL_BASELINES_H_
