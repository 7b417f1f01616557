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

#include "omgl/baselines.h"

#include <stdexcept>

namespace omgl {

std::vector<LabeledRecord> LabeledHistory(const Trace& history) {
  std::vector<LabeledRecord> samples;
  samples.reserve(history.size());
  for (const RoundRecord& r : history) samples.push_back({r.x, r.y, 1.0});
  return samples;
}

ActionLabel FtlPredict(const ProblemInstance& instance, const HOracle& oracle,
                       const Trace& history, Context x) {
  const int h = oracle.OptH(LabeledHistory(history), instance.loss());
  return instance.hypothesis(h).Eval(x);
}

Predictor ErmAdapter::Fit(const std::vector<LabeledRecord>& samples) {
  const int h = oracle_.OptH(samples, instance_.loss());
  const Hypothesis* hyp = &instance_.hypothesis(h);
  return [hyp](Context x) { return hyp->Eval(x); };
}

Predictor ConstantLearner::Fit(const std::vector<LabeledRecord>&) {
  const ActionLabel label = label_;
  return [label](Context) { return label; };
}

ActionLabel OnlineBatchWrapper::Predict(const ProblemInstance& instance,
                                        const Trace& history, Context x) {
  Predictor f = learner_.Fit(LabeledHistory(history));
  ++retrains_;
  if (!f) throw std::runtime_error("batch learner returned no predictor");
  const ActionLabel y = f(x);
  instance.CheckLabel(y);
  return y;
}

}  // namespace omgl
