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

#include "omgl/amf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "omgl/zero_sum.h"

namespace omgl {
namespace {

struct AmfGameShape {
  // Action indices H realizes at x.
  std::vector<int> rows;
  // Benchmark action indices of active columns.
  std::vector<int> active_columns;
  bool has_inactive_column = false;
};

AmfGameShape Shape(const ProblemInstance& instance, Context x) {
  if (!instance.actions().binary()) {
    throw std::invalid_argument("AMF value is implemented for binary actions");
  }
  instance.CheckContext(x);
  AmfGameShape shape;
  std::vector<char> realized(instance.actions().size(), 0);
  for (const Hypothesis& h : instance.hypotheses()) {
    realized[instance.ActionIndex(h.Eval(x))] = 1;
  }
  for (int a = 0; a < instance.actions().size(); ++a) {
    if (realized[a]) shape.rows.push_back(a);
  }
  // The all-of-X group is active at x, so every realized benchmark label
  // appears in an active column.
  shape.active_columns = shape.rows;
  ScopedGroupAccess scope(GroupAccess::kEvaluation);
  for (const Group& g : instance.groups()) {
    if (!g.Contains(x)) {
      shape.has_inactive_column = true;
      break;
    }
  }
  return shape;
}

// Expected loss of action a when y = +1 with probability gamma.
double ExpectedLoss(const ProblemInstance& instance, int a, double gamma) {
  const LossTable& loss = instance.loss();
  return gamma * loss(a, 0) + (1.0 - gamma) * loss(a, 1);
}

GameMatrix ShapeGame(const ProblemInstance& instance, const AmfGameShape& s,
                     double gamma) {
  const int rows = static_cast<int>(s.rows.size());
  const int cols =
      static_cast<int>(s.active_columns.size()) + (s.has_inactive_column ? 1 : 0);
  GameMatrix a = GameMatrix::Zero(std::max(rows, 2), cols);
  for (int r = 0; r < rows; ++r) {
    for (size_t c = 0; c < s.active_columns.size(); ++c) {
      a(r, c) = ExpectedLoss(instance, s.rows[r], gamma) -
                ExpectedLoss(instance, s.active_columns[c], gamma);
    }
  }
  // A single realizable label: duplicate the row so the solver sees a game.
  if (rows == 1) a.row(1) = a.row(0);
  return a;
}

double InnerValue(const ProblemInstance& instance, const AmfGameShape& s,
                  double gamma) {
  return SolveZeroSum(ShapeGame(instance, s, gamma)).value;
}

}  // namespace

double AmfInnerValue(const ProblemInstance& instance, Context x, double gamma) {
  return InnerValue(instance, Shape(instance, x), gamma);
}

double AmfValue(const ProblemInstance& instance, Context x, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  const AmfGameShape s = Shape(instance, x);
  std::vector<double> gammas;
  for (int i = 0; i < grid_points; ++i) {
    gammas.push_back(static_cast<double>(i) / (grid_points - 1));
  }
  // Each entry is affine in gamma; add every crossing of two entries.
  const GameMatrix at0 = ShapeGame(instance, s, 0.0);
  const GameMatrix at1 = ShapeGame(instance, s, 1.0);
  const int n = static_cast<int>(at0.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a0 = at0(i), b0 = at0(j);
      const double sa = at1(i) - a0, sb = at1(j) - b0;
      if (sa == sb) continue;
      const double g = (b0 - a0) / (sa - sb);
      if (g > 0.0 && g < 1.0) gammas.push_back(g);
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double g : gammas) best = std::max(best, InnerValue(instance, s, g));
  return best;
}

double AmfRegret(const ProblemInstance& instance, const Trace& trace,
                 const std::vector<double>& amf_values) {
  if (amf_values.size() != trace.size()) {
    throw std::invalid_argument("one AMF value per round required");
  }
  ExactGhOracle oracle(instance);
  OracleQuery q;
  q.regret_records = HistoryRecords(trace);
  double total_v = 0.0;
  for (double v : amf_values) total_v += v;
  return oracle.OptGh(q).objective - total_v;
}

double MeanPlayRegret(const ProblemInstance& instance,
                      const EmpiricalPlay& play, Context x,
                      ActionLabel y_pred, ActionLabel y_true) {
  if (play.empty()) throw std::invalid_argument("empty play");
  double total = 0.0;
  for (const GroupHypothesisPair& pair : play) {
    total += InstantGroupRegret(instance, pair, x, y_pred, y_true);
  }
  return total / play.size();
}

EpsilonGapResult EpsilonGap(const ProblemInstance& instance,
                            const GhOracle& oracle, const Trace& history,
                            const FtplConfig& cfg, int m_small, int m_large,
                            Context x, ActionLabel y_pred, ActionLabel y_true,
                            Rng& rng) {
  if (m_small < 1 || m_large < 10 * m_small) {
    throw std::invalid_argument("need M_small >= 1 and M_large >= 10 M_small");
  }
  FtplConfig small = cfg;
  small.M = m_small;
  FtplConfig large = cfg;
  large.M = m_large;
  EpsilonGapResult r;
  r.mean_small = MeanPlayRegret(
      instance, FtplEmpiricalPlay(instance, oracle, history, small, rng), x,
      y_pred, y_true);
  r.mean_large = MeanPlayRegret(
      instance, FtplEmpiricalPlay(instance, oracle, history, large, rng), x,
      y_pred, y_true);
  r.gap = std::abs(r.mean_small - r.mean_large);
  return r;
}

}  // namespace omgl
