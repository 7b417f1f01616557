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

#include "omgl/environments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omgl {

ContextDistribution UniformDistribution(int m) {
  return {std::vector<double>(m, 1.0 / m)};
}

ContextDistribution PointMass(int m, int x) {
  ContextDistribution d{std::vector<double>(m, 0.0)};
  d.probs.at(x) = 1.0;
  return d;
}

void ValidateDistribution(const ContextDistribution& dist) {
  if (dist.probs.empty()) throw std::invalid_argument("empty distribution");
  double sum = 0.0;
  for (double p : dist.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("distribution entries must be >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution must sum to 1");
  }
}

bool ValidateSmoothness(const ContextDistribution& dist, double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1]");
  }
  const double m = static_cast<double>(dist.probs.size());
  const double top = *std::max_element(dist.probs.begin(), dist.probs.end());
  return top * m <= 1.0 / sigma + 1e-12;
}

Context SampleContext(const ContextDistribution& dist, Rng& rng) {
  const double u = Uniform01(rng);
  double cumulative = 0.0;
  int last = 0;
  for (int x = 0; x < static_cast<int>(dist.probs.size()); ++x) {
    if (dist.probs[x] <= 0.0) continue;
    last = x;
    cumulative += dist.probs[x];
    if (u < cumulative) return Context{x};
  }
  return Context{last};
}

std::vector<double> WaterFill(std::vector<double> probs, double cap) {
  const int m = static_cast<int>(probs.size());
  if (cap * m < 1.0 - 1e-15) throw std::invalid_argument("cap too small");
  std::vector<char> clipped(m, 0);
  for (int iter = 0; iter <= m; ++iter) {
    bool changed = false;
    for (int x = 0; x < m; ++x) {
      if (!clipped[x] && probs[x] > cap) {
        clipped[x] = 1;
        changed = true;
      }
    }
    int num_clipped = 0;
    double free_mass = 0.0;
    for (int x = 0; x < m; ++x) {
      if (clipped[x]) {
        ++num_clipped;
      } else {
        free_mass += probs[x];
      }
    }
    const double remainder = std::max(0.0, 1.0 - cap * num_clipped);
    for (int x = 0; x < m; ++x) {
      if (clipped[x]) {
        probs[x] = cap;
      } else if (free_mass > 0.0) {
        probs[x] *= remainder / free_mass;
      } else {
        probs[x] = remainder / (m - num_clipped);
      }
    }
    if (!changed) break;
  }
  return probs;
}

ContextDistribution AdaptiveSmoothAdversary(const ProblemInstance& instance,
                                            const Trace& history,
                                            const SmoothAdversaryConfig& cfg) {
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1]");
  }
  const int m = instance.universe_size();
  if (cfg.sigma == 1.0 || history.empty()) return UniformDistribution(m);

  const int k = instance.actions().size();
  std::vector<double> learner(m, 0.0);
  std::vector<double> per_label(static_cast<size_t>(m) * k, 0.0);
  const size_t start =
      history.size() > static_cast<size_t>(cfg.window)
          ? history.size() - cfg.window
          : 0;
  for (size_t s = start; s < history.size(); ++s) {
    const RoundRecord& r = history[s];
    learner[r.x.index] += instance.Loss(r.y_hat, r.y);
    for (int a = 0; a < k; ++a) {
      per_label[r.x.index * k + a] +=
          instance.Loss(instance.actions().label(a), r.y);
    }
  }
  std::vector<double> score(m);
  double top = -std::numeric_limits<double>::infinity();
  for (int x = 0; x < m; ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < k; ++a) best = std::min(best, per_label[x * k + a]);
    score[x] = learner[x] - best;
    top = std::max(top, score[x]);
  }
  std::vector<double> w(m);
  double total = 0.0;
  for (int x = 0; x < m; ++x) {
    w[x] = std::exp(cfg.tilt * (score[x] - top));
    total += w[x];
  }
  for (double& v : w) v /= total;
  return {WaterFill(std::move(w), 1.0 / (cfg.sigma * m))};
}

std::string LabelPolicyName(LabelPolicyKind kind) {
  switch (kind) {
    case LabelPolicyKind::kFixedConceptWithNoise:
      return "fixed-concept-with-noise";
    case LabelPolicyKind::kGroupDependentConcept:
      return "group-dependent-concept";
    case LabelPolicyKind::kHistoryAdaptiveWorstCase:
      return "history-adaptive-worst-case";
  }
  return "";
}

LabelPolicyKind ParseLabelPolicyKind(const std::string& name) {
  for (LabelPolicyKind k : {LabelPolicyKind::kFixedConceptWithNoise,
                            LabelPolicyKind::kGroupDependentConcept,
                            LabelPolicyKind::kHistoryAdaptiveWorstCase}) {
    if (LabelPolicyName(k) == name) return k;
  }
  throw std::invalid_argument("unknown label policy '" + name + "'");
}

void ValidateLabelPolicy(const LabelPolicy& policy,
                         const ProblemInstance& instance) {
  if (!(policy.noise >= 0.0 && policy.noise < 0.5)) {
    throw std::invalid_argument("noise rate must lie in [0, 1/2)");
  }
  auto check_h = [&](int h) {
    if (h < 0 || h >= instance.num_hypotheses()) {
      throw std::invalid_argument("concept hypothesis index out of range");
    }
  };
  check_h(policy.concept_hypothesis);
  for (const ConceptRegion& r : policy.regions) check_h(r.hypothesis);
  if (policy.window < 1) throw std::invalid_argument("window must be >= 1");
}

namespace {

ActionLabel ApplyNoise(const ProblemInstance& instance, double noise,
                       ActionLabel y, Rng& rng) {
  const double u = Uniform01(rng);
  if (u >= noise) return y;
  const int k = instance.actions().size();
  const int idx = instance.ActionIndex(y);
  int other = UniformIndex(rng, k - 1);
  if (other >= idx) ++other;
  return instance.actions().label(other);
}

}  // namespace

ActionLabel ChooseLabel(const ProblemInstance& instance,
                        const LabelPolicy& policy, const Trace& history,
                        Context x, Rng& rng) {
  instance.CheckContext(x);
  ActionLabel y;
  switch (policy.kind) {
    case LabelPolicyKind::kFixedConceptWithNoise:
      y = instance.hypothesis(policy.concept_hypothesis).Eval(x);
      break;
    case LabelPolicyKind::kGroupDependentConcept: {
      int h = policy.concept_hypothesis;
      for (const ConceptRegion& r : policy.regions) {
        if (r.group.Contains(x)) {
          h = r.hypothesis;
          break;
        }
      }
      y = instance.hypothesis(h).Eval(x);
      break;
    }
    case LabelPolicyKind::kHistoryAdaptiveWorstCase: {
      // Learner's action frequencies over the window, at x when available.
      const int k = instance.actions().size();
      std::vector<double> at_x(k, 0.0), overall(k, 0.0);
      const size_t start =
          history.size() > static_cast<size_t>(policy.window)
              ? history.size() - policy.window
              : 0;
      for (size_t s = start; s < history.size(); ++s) {
        const int a = instance.ActionIndex(history[s].y_hat);
        overall[a] += 1.0;
        if (history[s].x == x) at_x[a] += 1.0;
      }
      double n_x = 0.0, n_all = 0.0;
      for (int a = 0; a < k; ++a) {
        n_x += at_x[a];
        n_all += overall[a];
      }
      std::vector<double> q(k, 1.0 / k);
      if (n_x > 0.0) {
        for (int a = 0; a < k; ++a) q[a] = at_x[a] / n_x;
      } else if (n_all > 0.0) {
        for (int a = 0; a < k; ++a) q[a] = overall[a] / n_all;
      }
      int best = 0;
      double best_loss = -1.0;
      for (int yi = 0; yi < k; ++yi) {
        double expected = 0.0;
        for (int a = 0; a < k; ++a) expected += q[a] * instance.loss()(a, yi);
        if (expected > best_loss + 1e-12) {
          best_loss = expected;
          best = yi;
        }
      }
      y = instance.actions().label(best);
      break;
    }
  }
  return ApplyNoise(instance, policy.noise, y, rng);
}

ActionLabel ChooseLabelSeeingPrediction(const ProblemInstance& instance,
                                        const LabelPolicy& policy,
                                        ActionLabel y_hat, Rng& rng) {
  const int k = instance.actions().size();
  const int a = instance.ActionIndex(y_hat);
  int best = 0;
  double best_loss = -1.0;
  for (int yi = 0; yi < k; ++yi) {
    if (instance.loss()(a, yi) > best_loss + 1e-12) {
      best_loss = instance.loss()(a, yi);
      best = yi;
    }
  }
  return ApplyNoise(instance, policy.noise, instance.actions().label(best), rng);
}

std::string ContextPolicyName(ContextPolicyKind kind) {
  switch (kind) {
    case ContextPolicyKind::kUniform:
      return "uniform";
    case ContextPolicyKind::kFixed:
      return "fixed";
    case ContextPolicyKind::kSmoothAdaptive:
      return "smooth-adaptive";
    case ContextPolicyKind::kTransductive:
      return "transductive";
  }
  return "";
}

ContextPolicyKind ParseContextPolicyKind(const std::string& name) {
  for (ContextPolicyKind k :
       {ContextPolicyKind::kUniform, ContextPolicyKind::kFixed,
        ContextPolicyKind::kSmoothAdaptive, ContextPolicyKind::kTransductive}) {
    if (ContextPolicyName(k) == name) return k;
  }
  throw std::invalid_argument("unknown context policy '" + name + "'");
}

Nature::Nature(const ProblemInstance& instance, ContextPolicy contexts,
               LabelPolicy labels, std::uint64_t seed)
    : instance_(instance),
      contexts_(std::move(contexts)),
      labels_(std::move(labels)),
      seed_(seed) {
  const int m = instance_.universe_size();
  if (!(contexts_.sigma > 0.0 && contexts_.sigma <= 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1]");
  }
  ValidateLabelPolicy(labels_, instance_);
  switch (contexts_.kind) {
    case ContextPolicyKind::kUniform:
    case ContextPolicyKind::kSmoothAdaptive:
      fixed_ = UniformDistribution(m);
      break;
    case ContextPolicyKind::kFixed:
      if (static_cast<int>(contexts_.probs.size()) != m) {
        throw std::invalid_argument("fixed distribution length must equal m");
      }
      fixed_.probs = contexts_.probs;
      ValidateDistribution(fixed_);
      if (!ValidateSmoothness(fixed_, contexts_.sigma)) {
        throw std::invalid_argument("fixed distribution is not sigma-smooth");
      }
      break;
    case ContextPolicyKind::kTransductive: {
      if (contexts_.support.empty()) {
        throw std::invalid_argument("transductive support must be nonempty");
      }
      std::vector<int> support = contexts_.support;
      std::sort(support.begin(), support.end());
      if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
        throw std::invalid_argument("transductive support has duplicates");
      }
      std::vector<double> w = contexts_.weights;
      if (w.empty()) w.assign(contexts_.support.size(), 1.0);
      if (w.size() != contexts_.support.size()) {
        throw std::invalid_argument("transductive weights must match support");
      }
      double total = 0.0;
      for (double v : w) {
        if (!(v >= 0.0)) throw std::invalid_argument("negative weight");
        total += v;
      }
      if (!(total > 0.0)) throw std::invalid_argument("zero total weight");
      fixed_.probs.assign(m, 0.0);
      for (size_t i = 0; i < contexts_.support.size(); ++i) {
        instance_.CheckContext(Context{contexts_.support[i]});
        fixed_.probs[contexts_.support[i]] = w[i] / total;
      }
      break;
    }
  }
  if (contexts_.kind == ContextPolicyKind::kTransductive) {
    for (int x : contexts_.support) revealed_.contexts.push_back(Context{x});
  } else {
    for (int x = 0; x < m; ++x) revealed_.contexts.push_back(Context{x});
  }
  last_ = fixed_;
}

Context Nature::NextContext(int t, const Trace& history) {
  if (contexts_.kind == ContextPolicyKind::kSmoothAdaptive) {
    last_ = AdaptiveSmoothAdversary(
        instance_, history,
        {contexts_.sigma, contexts_.window, contexts_.tilt});
    if (!ValidateSmoothness(last_, contexts_.sigma)) {
      throw std::logic_error("adaptive adversary broke the density bound");
    }
  } else {
    last_ = fixed_;
  }
  Rng rng = MakeStream(seed_, StreamTag::kContext, t);
  return SampleContext(last_, rng);
}

ActionLabel Nature::NextLabel(int t, const Trace& history, Context x) {
  Rng rng = MakeStream(seed_, StreamTag::kLabel, t);
  return ChooseLabel(instance_, labels_, history, x, rng);
}

ActionLabel Nature::NextLabelSeeingPrediction(int t, ActionLabel y_hat) {
  Rng rng = MakeStream(seed_, StreamTag::kLabel, t);
  return ChooseLabelSeeingPrediction(instance_, labels_, y_hat, rng);
}

}  // namespace omgl
