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

#ifndef OMGL_CORE_H_
#define OMGL_CORE_H_

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace omgl {

// A point of the finite context universe {0, ..., m-1}.
struct Context {
  int index = 0;

  // Position of the context in [0, 1) for a universe of size m.
  double Embedding(int m) const { return static_cast<double>(index) / m; }

  friend auto operator<=>(const Context&, const Context&) = default;
};

// A label in the learner's / Nature's action space. Binary instances use
// {-1, +1}; K-class instances use {0, ..., K-1}.
struct ActionLabel {
  int value = 0;

  friend auto operator<=>(const ActionLabel&, const ActionLabel&) = default;
};

// Ordered action space. Binary mode orders the labels (+1, -1), so action
// index 0 is +1; this is the row order of every binary game matrix.
class ActionSet {
 public:
  static ActionSet Binary();
  static ActionSet MultiClass(int k);

  int size() const { return static_cast<int>(labels_.size()); }
  bool binary() const { return binary_; }
  ActionLabel label(int index) const { return labels_.at(index); }
  bool Contains(ActionLabel y) const;
  // Throws std::invalid_argument for labels outside the set.
  int IndexOf(ActionLabel y) const;

 private:
  ActionSet(std::vector<ActionLabel> labels, bool binary)
      : labels_(std::move(labels)), binary_(binary) {}

  std::vector<ActionLabel> labels_;
  bool binary_;
};

// Bounded loss l(y', y) in [0, 1], stored by action index:
// entries[i'][i] = l(label(i'), label(i)).
class LossTable {
 public:
  static LossTable ZeroOne(int k);
  explicit LossTable(std::vector<std::vector<double>> entries);

  int size() const { return k_; }
  double operator()(int pred_index, int true_index) const {
    return entries_[pred_index * k_ + true_index];
  }
  std::vector<std::vector<double>> Rows() const;
  bool IsZeroOne() const;

 private:
  int k_;
  std::vector<double> entries_;
};

class Hypothesis {
 public:
  enum class Kind { kThreshold, kTable };

  // Binary threshold: h(x) = polarity if x.index >= threshold else -polarity.
  static Hypothesis Threshold(int threshold, int polarity);
  static Hypothesis Table(std::vector<ActionLabel> table);

  Kind kind() const { return kind_; }
  int threshold() const { return threshold_; }
  int polarity() const { return polarity_; }
  const std::vector<ActionLabel>& table() const { return table_; }

  // Throws std::out_of_range when a table hypothesis is read past its end.
  ActionLabel Eval(Context x) const;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

 private:
  Hypothesis() = default;

  Kind kind_ = Kind::kThreshold;
  int threshold_ = 0;
  int polarity_ = 1;
  std::vector<ActionLabel> table_;
};

class Group {
 public:
  enum class Kind { kInterval, kSet };

  // Inclusive interval [lo, hi]; requires lo <= hi.
  static Group Interval(int lo, int hi);
  static Group Set(std::vector<int> members);

  Kind kind() const { return kind_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  // Sorted, deduplicated members (set kind only).
  const std::vector<int>& members() const { return members_; }

  bool Contains(Context x) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group() = default;

  Kind kind_ = Kind::kInterval;
  int lo_ = 0;
  int hi_ = 0;
  std::vector<int> members_;
};

ActionLabel EvalHypothesis(const Hypothesis& h, Context x);
int GroupIndicator(const Group& g, Context x);

// One element of G x H, by enumeration index into the instance.
struct GroupHypothesisPair {
  int group = 0;
  int hypothesis = 0;

  friend auto operator<=>(const GroupHypothesisPair&,
                          const GroupHypothesisPair&) = default;
};

// Who is touching the full group list. The learner must never enumerate G;
// oracles and the evaluation harness may.
enum class GroupAccess { kLearner = 0, kOracle = 1, kEvaluation = 2 };

// Tags every ProblemInstance::groups() call made on this thread for the
// lifetime of the scope. The default role is kLearner.
class ScopedGroupAccess {
 public:
  explicit ScopedGroupAccess(GroupAccess role);
  ~ScopedGroupAccess();
  ScopedGroupAccess(const ScopedGroupAccess&) = delete;
  ScopedGroupAccess& operator=(const ScopedGroupAccess&) = delete;

  static GroupAccess Current();

 private:
  GroupAccess previous_;
};

// The (X, Y, H, G, loss) tuple. Immutable after construction apart from the
// group-list access counters.
class ProblemInstance {
 public:
  // Throws std::invalid_argument if any invariant fails: empty classes,
  // missing all-of-X group, malformed tables, out-of-range loss entries.
  ProblemInstance(int universe_size, ActionSet actions,
                  std::vector<Hypothesis> hypotheses,
                  std::vector<Group> groups, LossTable loss, int vc_hint = 0);

  ProblemInstance(const ProblemInstance& other);
  ProblemInstance& operator=(const ProblemInstance&) = delete;

  int universe_size() const { return m_; }
  const ActionSet& actions() const { return actions_; }
  const LossTable& loss() const { return loss_; }
  int vc_hint() const { return vc_hint_; }

  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
  const Hypothesis& hypothesis(int i) const { return hypotheses_.at(i); }
  int num_hypotheses() const { return static_cast<int>(hypotheses_.size()); }

  // Full-list access is counted against the caller's GroupAccess role.
  const std::vector<Group>& groups() const;
  // Single-element access (evaluating a group returned by an oracle).
  const Group& group(int i) const { return groups_.at(i); }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  int full_group() const { return full_group_; }

  std::int64_t group_list_accesses(GroupAccess role) const {
    return accesses_[static_cast<int>(role)].load();
  }

  bool IsValid(Context x) const { return x.index >= 0 && x.index < m_; }
  void CheckContext(Context x) const;
  void CheckLabel(ActionLabel y) const;

  int ActionIndex(ActionLabel y) const { return actions_.IndexOf(y); }
  double Loss(ActionLabel pred, ActionLabel truth) const {
    return loss_(actions_.IndexOf(pred), actions_.IndexOf(truth));
  }

 private:
  int m_;
  ActionSet actions_;
  std::vector<Hypothesis> hypotheses_;
  std::vector<Group> groups_;
  LossTable loss_;
  int vc_hint_;
  int full_group_ = -1;
  mutable std::array<std::atomic<std::int64_t>, 3> accesses_{};
};

// g(x) * (l(y_pred, y_true) - l(h(x), y_true)).
double InstantGroupRegret(const ProblemInstance& instance,
                          GroupHypothesisPair pair, Context x,
                          ActionLabel y_pred, ActionLabel y_true);

struct RoundRecord {
  int t = 0;
  Context x;
  ActionLabel y_hat;
  ActionLabel y;
  // Probability the learner assigned to action index 0 that round.
  double bernoulli_p = 0.0;
  double lp_value = 0.0;
  int gh_oracle_calls = 0;
  int h_oracle_calls = 0;
};

using Trace = std::vector<RoundRecord>;

// Two-polarity thresholds over {0..m}: |H| = 2(m + 1).
std::vector<Hypothesis> AllThresholds(int m);
// Every interval [lo, hi] with 0 <= lo <= hi < m, ordered by lo then hi.
std::vector<Group> AllIntervals(int m);
// The default binary family: thresholds, all intervals, zero-one loss.
ProblemInstance MakeThresholdIntervalInstance(int m);

std::string DescribeGroup(const Group& g);
std::string DescribeHypothesis(const Hypothesis& h);

}  // namespace omgl

#endif  // OMGL_CORE_H_
