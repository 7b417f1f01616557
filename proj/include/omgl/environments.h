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

#ifndef OMGL_ENVIRONMENTS_H_
#define OMGL_ENVIRONMENTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "omgl/core.h"
#include "omgl/rng.h"

namespace omgl {

struct ContextDistribution {
  std::vector<double> probs;
};

ContextDistribution UniformDistribution(int m);
ContextDistribution PointMass(int m, int x);

// Throws std::invalid_argument unless probs is nonnegative and sums to 1
// within 1e-12.
void ValidateDistribution(const ContextDistribution& dist);

// True iff max_x probs[x] * m <= 1 / sigma + 1e-12 (uniform base measure).
bool ValidateSmoothness(const ContextDistribution& dist, double sigma);

Context SampleContext(const ContextDistribution& dist, Rng& rng);

// Clips probs to at most cap and redistributes the excess over the unclipped
// entries proportionally, repeating until no entry exceeds cap.
std::vector<double> WaterFill(std::vector<double> probs, double cap);

// Adaptive sigma-smooth context adversary. Each context is scored by the
// learner's regret over the trailing window against the best constant label
// at that context; mass is tilted by exp(tilt * score), then clipped to the
// density bound 1 / (sigma m) and renormalized.
struct SmoothAdversaryConfig {
  double sigma = 1.0;
  int window = 200;
  double tilt = 1.0;
};

ContextDistribution AdaptiveSmoothAdversary(const ProblemInstance& instance,
                                            const Trace& history,
                                            const SmoothAdversaryConfig& cfg);

enum class LabelPolicyKind {
  kFixedConceptWithNoise,
  kGroupDependentConcept,
  kHistoryAdaptiveWorstCase,
};

std::string LabelPolicyName(LabelPolicyKind kind);
LabelPolicyKind ParseLabelPolicyKind(const std::string& name);

struct ConceptRegion {
  Group group;
  int hypothesis = 0;
};

struct LabelPolicy {
  LabelPolicyKind kind = LabelPolicyKind::kFixedConceptWithNoise;
  // Probability of replacing the chosen label with a different one.
  double noise = 0.0;
  // Concept for fixed policies, and outside every region for
  // group-dependent ones.
  int concept_hypothesis = 0;
  // First matching region wins.
  std::vector<ConceptRegion> regions;
  // Trailing window for the worst-case policy.
  int window = 200;
  // Stress-test variant: the worst-case policy sees y_hat_t.
  bool sees_prediction = false;
};

void ValidateLabelPolicy(const LabelPolicy& policy,
                         const ProblemInstance& instance);

// Label from the pre-round history and x_t only.
ActionLabel ChooseLabel(const ProblemInstance& instance,
                        const LabelPolicy& policy, const Trace& history,
                        Context x, Rng& rng);

// Worst label given the realized prediction: argmax_y loss(y_hat, y),
// lowest index on ties. Used when sees_prediction is set.
ActionLabel ChooseLabelSeeingPrediction(const ProblemInstance& instance,
                                        const LabelPolicy& policy,
                                        ActionLabel y_hat, Rng& rng);

struct TransductiveSet {
  std::vector<Context> contexts;
};

enum class ContextPolicyKind { kUniform, kFixed, kSmoothAdaptive, kTransductive };

std::string ContextPolicyName(ContextPolicyKind kind);
ContextPolicyKind ParseContextPolicyKind(const std::string& name);

struct ContextPolicy {
  ContextPolicyKind kind = ContextPolicyKind::kUniform;
  double sigma = 1.0;
  // kFixed: full distribution over the universe.
  std::vector<double> probs;
  // kTransductive: revealed contexts and optional weights over them.
  std::vector<int> support;
  std::vector<double> weights;
  int window = 200;
  double tilt = 1.0;
};

// Nature for one run. Context and label draws use per-round streams keyed
// on the run seed.
class Nature {
 public:
  Nature(const ProblemInstance& instance, ContextPolicy contexts,
         LabelPolicy labels, std::uint64_t seed);

  Context NextContext(int t, const Trace& history);
  ActionLabel NextLabel(int t, const Trace& history, Context x);
  ActionLabel NextLabelSeeingPrediction(int t, ActionLabel y_hat);

  bool label_sees_prediction() const { return labels_.sees_prediction; }
  const ContextDistribution& last_distribution() const { return last_; }
  // The revealed set for transductive runs, every context otherwise.
  const TransductiveSet& revealed() const { return revealed_; }
  const ContextPolicy& context_policy() const { return contexts_; }
  const LabelPolicy& label_policy() const { return labels_; }

 private:
  const ProblemInstance& instance_;
  ContextPolicy contexts_;
  LabelPolicy labels_;
  std::uint64_t seed_;
  ContextDistribution fixed_;
  ContextDistribution last_;
  TransductiveSet revealed_;
};

}  // namespace omgl

#endif  // OMGL_ENVIRONMENTS_H_
