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

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace omgl {
namespace {

thread_local GroupAccess current_access = GroupAccess::kLearner;

}  // namespace

// -- ActionSet ----------------------------------------------------------------

ActionSet ActionSet::Binary() {
  return ActionSet({ActionLabel{1}, ActionLabel{-1}}, true);
}

ActionSet ActionSet::MultiClass(int k) {
  if (k < 2) throw std::invalid_argument("action_count must be >= 2");
  if (k == 2) return Binary();
  std::vector<ActionLabel> labels;
  for (int i = 0; i < k; ++i) labels.push_back(ActionLabel{i});
  return ActionSet(std::move(labels), false);
}

bool ActionSet::Contains(ActionLabel y) const {
  return std::find(labels_.begin(), labels_.end(), y) != labels_.end();
}

int ActionSet::IndexOf(ActionLabel y) const {
  if (binary_) {
    if (y.value == 1) return 0;
    if (y.value == -1) return 1;
  } else if (y.value >= 0 && y.value < size()) {
    return y.value;
  }
  throw std::invalid_argument("label " + std::to_string(y.value) +
                              " is not in the action set");
}

// -- LossTable ----------------------------------------------------------------

LossTable LossTable::ZeroOne(int k) {
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 1.0));
  for (int i = 0; i < k; ++i) rows[i][i] = 0.0;
  return LossTable(std::move(rows));
}

LossTable::LossTable(std::vector<std::vector<double>> entries)
    : k_(static_cast<int>(entries.size())) {
  if (k_ < 2) throw std::invalid_argument("loss table must be at least 2x2");
  entries_.reserve(k_ * k_);
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != k_) {
      throw std::invalid_argument("loss table must be square");
    }
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("loss entries must lie in [0, 1]");
      }
      entries_.push_back(v);
    }
  }
}

std::vector<std::vector<double>> LossTable::Rows() const {
  std::vector<std::vector<double>> rows(k_, std::vector<double>(k_));
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) rows[i][j] = (*this)(i, j);
  }
  return rows;
}

bool LossTable::IsZeroOne() const {
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      if ((*this)(i, j) != (i == j ? 0.0 : 1.0)) return false;
    }
  }
  return true;
}

// -- Hypothesis / Group -------------------------------------------------------

Hypothesis Hypothesis::Threshold(int threshold, int polarity) {
  if (polarity != 1 && polarity != -1) {
    throw std::invalid_argument("threshold polarity must be +1 or -1");
  }
  if (threshold < 0) throw std::invalid_argument("threshold must be >= 0");
  Hypothesis h;
  h.kind_ = Kind::kThreshold;
  h.threshold_ = threshold;
  h.polarity_ = polarity;
  return h;
}

Hypothesis Hypothesis::Table(std::vector<ActionLabel> table) {
  Hypothesis h;
  h.kind_ = Kind::kTable;
  h.table_ = std::move(table);
  return h;
}

ActionLabel Hypothesis::Eval(Context x) const {
  if (kind_ == Kind::kThreshold) {
    return ActionLabel{x.index >= threshold_ ? polarity_ : -polarity_};
  }
  if (x.index < 0 || x.index >= static_cast<int>(table_.size())) {
    throw std::out_of_range("lookup-table hypothesis read at context " +
                            std::to_string(x.index) + ": malformed instance");
  }
  return table_[x.index];
}

Group Group::Interval(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("interval group needs lo <= hi");
  Group g;
  g.kind_ = Kind::kInterval;
  g.lo_ = lo;
  g.hi_ = hi;
  return g;
}

Group Group::Set(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Group g;
  g.kind_ = Kind::kSet;
  g.members_ = std::move(members);
  return g;
}

bool Group::Contains(Context x) const {
  if (kind_ == Kind::kInterval) return lo_ <= x.index && x.index <= hi_;
  return std::binary_search(members_.begin(), members_.end(), x.index);
}

ActionLabel EvalHypothesis(const Hypothesis& h, Context x) { return h.Eval(x); }

int GroupIndicator(const Group& g, Context x) { return g.Contains(x) ? 1 : 0; }

// -- ScopedGroupAccess --------------------------------------------------------

ScopedGroupAccess::ScopedGroupAccess(GroupAccess role)
    : previous_(current_access) {
  current_access = role;
}

ScopedGroupAccess::~ScopedGroupAccess() { current_access = previous_; }

GroupAccess ScopedGroupAccess::Current() { return current_access; }

// -- ProblemInstance ----------------------------------------------------------

ProblemInstance::ProblemInstance(int universe_size, ActionSet actions,
                                 std::vector<Hypothesis> hypotheses,
                                 std::vector<Group> groups, LossTable loss,
                                 int vc_hint)
    : m_(universe_size),
      actions_(std::move(actions)),
      hypotheses_(std::move(hypotheses)),
      groups_(std::move(groups)),
      loss_(std::move(loss)),
      vc_hint_(vc_hint) {
  if (m_ < 1) throw std::invalid_argument("universe_size must be >= 1");
  if (hypotheses_.empty()) throw std::invalid_argument("empty hypothesis class");
  if (groups_.empty()) throw std::invalid_argument("empty group class");
  if (loss_.size() != actions_.size()) {
    throw std::invalid_argument("loss table size does not match action_count");
  }
  for (const Hypothesis& h : hypotheses_) {
    if (h.kind() == Hypothesis::Kind::kThreshold) {
      if (!actions_.binary()) {
        throw std::invalid_argument("threshold hypotheses need binary actions");
      }
      if (h.threshold() > m_) {
        throw std::invalid_argument("threshold beyond universe size");
      }
    } else {
      if (static_cast<int>(h.table().size()) != m_) {
        throw std::invalid_argument("lookup table length must equal m");
      }
      for (ActionLabel y : h.table()) {
        if (!actions_.Contains(y)) {
          throw std::invalid_argument("lookup table holds an invalid label");
        }
      }
    }
  }
  for (int i = 0; i < static_cast<int>(groups_.size()); ++i) {
    const Group& g = groups_[i];
    bool full = false;
    if (g.kind() == Group::Kind::kInterval) {
      if (g.lo() < 0 || g.hi() >= m_) {
        throw std::invalid_argument("interval group outside the universe");
      }
      full = g.lo() == 0 && g.hi() == m_ - 1;
    } else {
      for (int x : g.members()) {
        if (x < 0 || x >= m_) {
          throw std::invalid_argument("set group member outside the universe");
        }
      }
      full = static_cast<int>(g.members().size()) == m_;
    }
    if (full && full_group_ < 0) full_group_ = i;
  }
  if (full_group_ < 0) {
    throw std::invalid_argument("group class must contain the all-of-X group");
  }
}

ProblemInstance::ProblemInstance(const ProblemInstance& other)
    : m_(other.m_),
      actions_(other.actions_),
      hypotheses_(other.hypotheses_),
      groups_(other.groups_),
      loss_(other.loss_),
      vc_hint_(other.vc_hint_),
      full_group_(other.full_group_) {}

const std::vector<Group>& ProblemInstance::groups() const {
  accesses_[static_cast<int>(current_access)].fetch_add(1);
  return groups_;
}

void ProblemInstance::CheckContext(Context x) const {
  if (!IsValid(x)) {
    throw std::invalid_argument("context " + std::to_string(x.index) +
                                " outside universe of size " +
                                std::to_string(m_));
  }
}

void ProblemInstance::CheckLabel(ActionLabel y) const { actions_.IndexOf(y); }

double InstantGroupRegret(const ProblemInstance& instance,
                          GroupHypothesisPair pair, Context x,
                          ActionLabel y_pred, ActionLabel y_true) {
  if (!instance.group(pair.group).Contains(x)) return 0.0;
  const ActionLabel benchmark = instance.hypothesis(pair.hypothesis).Eval(x);
  return instance.Loss(y_pred, y_true) - instance.Loss(benchmark, y_true);
}

// -- Reference families -------------------------------------------------------

std::vector<Hypothesis> AllThresholds(int m) {
  std::vector<Hypothesis> hs;
  hs.reserve(2 * (m + 1));
  for (int theta = 0; theta <= m; ++theta) {
    hs.push_back(Hypothesis::Threshold(theta, 1));
    hs.push_back(Hypothesis::Threshold(theta, -1));
  }
  return hs;
}

std::vector<Group> AllIntervals(int m) {
  std::vector<Group> gs;
  gs.reserve(m * (m + 1) / 2);
  for (int lo = 0; lo < m; ++lo) {
    for (int hi = lo; hi < m; ++hi) gs.push_back(Group::Interval(lo, hi));
  }
  return gs;
}

ProblemInstance MakeThresholdIntervalInstance(int m) {
  return ProblemInstance(m, ActionSet::Binary(), AllThresholds(m),
                         AllIntervals(m), LossTable::ZeroOne(2),
                         /*vc_hint=*/2);
}

std::string DescribeGroup(const Group& g) {
  std::ostringstream out;
  if (g.kind() == Group::Kind::kInterval) {
    out << "interval[" << g.lo() << "," << g.hi() << "]";
  } else {
    out << "set{";
    for (size_t i = 0; i < g.members().size(); ++i) {
      if (i) out << ",";
      out << g.members()[i];
    }
    out << "}";
  }
  return out.str();
}

std::string DescribeHypothesis(const Hypothesis& h) {
  std::ostringstream out;
  if (h.kind() == Hypothesis::Kind::kThreshold) {
    out << "threshold(" << h.threshold() << (h.polarity() > 0 ? ",+" : ",-")
        << ")";
  } else {
    out << "table[";
    for (size_t i = 0; i < h.table().size(); ++i) {
      if (i) out << ",";
      out << h.table()[i].value;
    }
    out << "]";
  }
  return out.str();
}

}  // namespace omgl
