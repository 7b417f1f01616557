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

#include "omgl/oracles.h"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace omgl {
namespace {

constexpr double kRelativeTieTolerance = 1e-10;

std::vector<int> ActionTable(const ProblemInstance& instance) {
  const int m = instance.universe_size();
  std::vector<int> table(static_cast<size_t>(instance.num_hypotheses()) * m);
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    for (int x = 0; x < m; ++x) {
      table[h * m + x] =
          instance.ActionIndex(instance.hypothesis(h).Eval(Context{x}));
    }
  }
  return table;
}

double LabeledAbsWeight(const std::vector<LabeledRecord>& records) {
  double w = 0.0;
  for (const LabeledRecord& r : records) w += std::abs(r.weight);
  return w;
}

}  // namespace

int CanonicalIndex(const ProblemInstance& instance, GroupHypothesisPair pair) {
  return pair.hypothesis * instance.num_groups() + pair.group;
}

GroupHypothesisPair PairAt(const ProblemInstance& instance, int index) {
  return {index % instance.num_groups(), index / instance.num_groups()};
}

double TotalAbsWeight(const OracleQuery& q) {
  double w = 0.0;
  for (const RegretRecord& r : q.regret_records) w += std::abs(r.weight);
  for (const CorrelationRecord& c : q.correlation_records) {
    w += std::abs(c.weight);
  }
  return w;
}

double GhObjective(const ProblemInstance& instance, const OracleQuery& q,
                   GroupHypothesisPair pair) {
  const Group& g = instance.group(pair.group);
  const Hypothesis& h = instance.hypothesis(pair.hypothesis);
  double total = 0.0;
  for (const RegretRecord& r : q.regret_records) {
    total += r.weight *
             InstantGroupRegret(instance, pair, r.x, r.y_pred, r.y_true);
  }
  for (const CorrelationRecord& c : q.correlation_records) {
    if (g.Contains(c.z)) total += c.weight * h.Eval(c.z).value;
  }
  return total;
}

double WeightedLoss(const ProblemInstance& instance, int hypothesis,
                    const std::vector<LabeledRecord>& records,
                    const LossTable& loss) {
  const Hypothesis& h = instance.hypothesis(hypothesis);
  double total = 0.0;
  for (const LabeledRecord& r : records) {
    total += r.weight * loss(instance.ActionIndex(h.Eval(r.x)),
                             instance.ActionIndex(r.y));
  }
  return total;
}

// -- ExactHOracle -------------------------------------------------------------

ExactHOracle::ExactHOracle(const ProblemInstance& instance)
    : instance_(instance), action_of_(ActionTable(instance)) {}

int ExactHOracle::OptH(const std::vector<LabeledRecord>& records,
                       const LossTable& loss) const {
  Count();
  const int m = instance_.universe_size();
  const int k = instance_.actions().size();
  if (loss.size() != k) {
    throw std::invalid_argument("loss table does not match the action set");
  }
  if (records.empty()) return 0;

  // cost[x][a] = sum of w * loss(a, y) over records at x.
  std::vector<double> cost(static_cast<size_t>(m) * k, 0.0);
  std::vector<int> touched;
  std::vector<char> seen(m, 0);
  for (const LabeledRecord& r : records) {
    instance_.CheckContext(r.x);
    const int y = instance_.ActionIndex(r.y);
    for (int a = 0; a < k; ++a) cost[r.x.index * k + a] += r.weight * loss(a, y);
    if (!seen[r.x.index]) {
      seen[r.x.index] = 1;
      touched.push_back(r.x.index);
    }
  }

  const int num_h = instance_.num_hypotheses();
  std::vector<double> value(num_h, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (int h = 0; h < num_h; ++h) {
    double v = 0.0;
    for (int x : touched) v += cost[x * k + action_of_[h * m + x]];
    value[h] = v;
    best = std::min(best, v);
  }
  const double tol = kRelativeTieTolerance * LabeledAbsWeight(records);
  for (int h = 0; h < num_h; ++h) {
    if (value[h] <= best + tol) return h;
  }
  return 0;
}

// -- ExactGhOracle ------------------------------------------------------------

ExactGhOracle::ExactGhOracle(const ProblemInstance& instance)
    : instance_(instance),
      m_(instance.universe_size()),
      k_(instance.actions().size()),
      action_of_(ActionTable(instance)) {
  for (int a = 0; a < k_; ++a) {
    action_value_.push_back(instance.actions().label(a).value);
  }
  ScopedGroupAccess scope(GroupAccess::kOracle);
  groups_ = instance.groups();
  std::set<std::pair<int, int>> intervals;
  for (const Group& g : groups_) {
    if (g.kind() == Group::Kind::kSet) {
      any_set_ = true;
    } else {
      intervals.insert({g.lo(), g.hi()});
    }
  }
  const size_t all = static_cast<size_t>(m_) * (m_ + 1) / 2;
  all_intervals_ = !any_set_ && groups_.size() == all && intervals.size() == all;
}

GhResult ExactGhOracle::OptGh(const OracleQuery& q) const {
  Count();
  if (q.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const LossTable& loss = instance_.loss();

  std::vector<double> score(static_cast<size_t>(m_) * k_, 0.0);
  for (const RegretRecord& r : q.regret_records) {
    instance_.CheckContext(r.x);
    const int y = instance_.ActionIndex(r.y_true);
    const double learner = loss(instance_.ActionIndex(r.y_pred), y);
    double* row = &score[r.x.index * k_];
    for (int a = 0; a < k_; ++a) row[a] += r.weight * (learner - loss(a, y));
  }
  for (const CorrelationRecord& c : q.correlation_records) {
    instance_.CheckContext(c.z);
    double* row = &score[c.z.index * k_];
    for (int a = 0; a < k_; ++a) row[a] += c.weight * action_value_[a];
  }
  const double tol = kRelativeTieTolerance * TotalAbsWeight(q);

  const int num_h = instance_.num_hypotheses();
  const int num_g = static_cast<int>(groups_.size());
  std::vector<double> v(m_);
  std::vector<double> prefix(m_ + 1);
  std::vector<double> best_for_h(num_h);

  auto load = [&](int h) {
    const int* acts = &action_of_[h * m_];
    prefix[0] = 0.0;
    for (int x = 0; x < m_; ++x) {
      v[x] = score[x * k_ + acts[x]];
      prefix[x + 1] = prefix[x] + v[x];
    }
  };
  auto group_value = [&](const Group& g) {
    if (g.kind() == Group::Kind::kInterval) {
      return prefix[g.hi() + 1] - prefix[g.lo()];
    }
    double s = 0.0;
    for (int x : g.members()) s += v[x];
    return s;
  };

  double best = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < num_h; ++h) {
    load(h);
    double hb = -std::numeric_limits<double>::infinity();
    if (all_intervals_) {
      double run = -std::numeric_limits<double>::infinity();
      for (int x = 0; x < m_; ++x) {
        run = std::max(v[x], run + v[x]);
        hb = std::max(hb, run);
      }
    } else {
      for (const Group& g : groups_) hb = std::max(hb, group_value(g));
    }
    best_for_h[h] = hb;
    best = std::max(best, hb);
  }

  const double cut = best - tol;
  for (int h = 0; h < num_h; ++h) {
    if (best_for_h[h] < cut) continue;
    load(h);
    // Kadane and prefix differences may round differently; rescan with the
    // prefix sums and keep the largest if nothing clears the cut.
    int fallback = -1;
    double fallback_value = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < num_g; ++g) {
      const double gv = group_value(groups_[g]);
      if (gv >= cut) return {{g, h}, gv};
      if (gv > fallback_value) {
        fallback_value = gv;
        fallback = g;
      }
    }
    if (fallback >= 0 && fallback_value >= best_for_h[h] - tol) {
      return {{fallback, h}, fallback_value};
    }
  }
  // Unreachable for finite weights.
  return {{0, 0}, 0.0};
}

// -- Brute force --------------------------------------------------------------

GhResult BruteForceOptGh(const ProblemInstance& instance,
                         const OracleQuery& q) {
  std::vector<Group> groups;
  {
    ScopedGroupAccess scope(GroupAccess::kOracle);
    groups = instance.groups();
  }
  const int num_g = static_cast<int>(groups.size());
  const int num_h = instance.num_hypotheses();
  const size_t nr = q.regret_records.size();
  const size_t nc = q.correlation_records.size();

  std::vector<char> in_regret(num_g * nr), in_corr(num_g * nc);
  for (int g = 0; g < num_g; ++g) {
    for (size_t r = 0; r < nr; ++r) {
      in_regret[g * nr + r] = groups[g].Contains(q.regret_records[r].x);
    }
    for (size_t c = 0; c < nc; ++c) {
      in_corr[g * nc + c] = groups[g].Contains(q.correlation_records[c].z);
    }
  }

  std::vector<double> values(static_cast<size_t>(num_g) * num_h);
  std::vector<double> regret_term(nr), corr_term(nc);
  double best = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < num_h; ++h) {
    const Hypothesis& hyp = instance.hypothesis(h);
    for (size_t r = 0; r < nr; ++r) {
      const RegretRecord& rec = q.regret_records[r];
      regret_term[r] =
          rec.weight * (instance.Loss(rec.y_pred, rec.y_true) -
                        instance.Loss(hyp.Eval(rec.x), rec.y_true));
    }
    for (size_t c = 0; c < nc; ++c) {
      const CorrelationRecord& rec = q.correlation_records[c];
      corr_term[c] = rec.weight * hyp.Eval(rec.z).value;
    }
    for (int g = 0; g < num_g; ++g) {
      double total = 0.0;
      for (size_t r = 0; r < nr; ++r) {
        if (in_regret[g * nr + r]) total += regret_term[r];
      }
      for (size_t c = 0; c < nc; ++c) {
        if (in_corr[g * nc + c]) total += corr_term[c];
      }
      values[static_cast<size_t>(h) * num_g + g] = total;
      best = std::max(best, total);
    }
  }
  const double cut = best - kRelativeTieTolerance * TotalAbsWeight(q);
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= cut) {
      return {PairAt(instance, static_cast<int>(i)), values[i]};
    }
  }
  return {{0, 0}, 0.0};
}

}  // namespace omgl
