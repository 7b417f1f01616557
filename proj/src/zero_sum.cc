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

#include "omgl/zero_sum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omgl {
namespace {

constexpr double kValueTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-11;
constexpr double kPivotEpsilon = 1e-12;
constexpr long kMaxFaceCandidates = 200000;

double Scale(const GameMatrix& a) { return a.cwiseAbs().maxCoeff(); }

std::vector<double> Uniform(int k) { return std::vector<double>(k, 1.0 / k); }

MixedStrategy SolveTwoRows(const GameMatrix& a) {
  const int cols = static_cast<int>(a.cols());
  auto f = [&](double p) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < cols; ++y) {
      worst = std::max(worst, p * a(0, y) + (1.0 - p) * a(1, y));
    }
    return worst;
  };
  std::vector<double> candidates = {0.0, 1.0};
  for (int y = 0; y < cols; ++y) {
    for (int z = y + 1; z < cols; ++z) {
      const double sy = a(0, y) - a(1, y);
      const double sz = a(0, z) - a(1, z);
      if (sy == sz) continue;
      const double p = (a(1, z) - a(1, y)) / (sy - sz);
      if (p > 0.0 && p < 1.0) candidates.push_back(p);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double p : candidates) best = std::min(best, f(p));
  const double tol = kValueTolerance * std::max(Scale(a), 0.0);
  double lo = 1.0, hi = 0.0;
  for (double p : candidates) {
    if (f(p) <= best + tol) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  const double p = std::clamp(0.5, lo, hi);
  return {{p, 1.0 - p}, f(p)};
}

// max 1'u s.t. B'u <= 1, u >= 0 with B > 0, by tableau simplex with Bland's
// rule. Returns u.
std::vector<double> SimplexPositiveGame(const GameMatrix& b) {
  const int k = static_cast<int>(b.rows());
  const int c = static_cast<int>(b.cols());
  const int width = k + c + 1;
  std::vector<std::vector<double>> t(c + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(c);
  for (int y = 0; y < c; ++y) {
    for (int j = 0; j < k; ++j) t[y][j] = b(j, y);
    t[y][k + y] = 1.0;
    t[y][width - 1] = 1.0;
    basis[y] = k + y;
  }
  for (int j = 0; j < k; ++j) t[c][j] = -1.0;

  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < k + c; ++j) {
      if (t[c][j] < -kPivotEpsilon) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int y = 0; y < c; ++y) {
      if (t[y][enter] > kPivotEpsilon) {
        const double ratio = t[y][width - 1] / t[y][enter];
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave >= 0 &&
             basis[y] < basis[leave])) {
          best_ratio = ratio;
          leave = y;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("zero-sum LP unbounded");
    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (int y = 0; y <= c; ++y) {
      if (y == leave) continue;
      const double factor = t[y][enter];
      if (factor == 0.0) continue;
      for (int j = 0; j < width; ++j) t[y][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  std::vector<double> u(k, 0.0);
  for (int y = 0; y < c; ++y) {
    if (basis[y] < k) u[basis[y]] = std::max(0.0, t[y][width - 1]);
  }
  return u;
}

bool Feasible(const GameMatrix& a, const Eigen::VectorXd& p, double value,
              double tol) {
  if (std::abs(p.sum() - 1.0) > kFeasibilityTolerance) return false;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] < -kFeasibilityTolerance) return false;
  }
  const Eigen::VectorXd payoff = a.transpose() * p;
  return payoff.maxCoeff() <= value + tol;
}

// Closest point to uniform in {p in simplex : A'p <= value}. The optimum is
// the projection of the uniform vector onto the affine hull of some face, so
// it is found by projecting onto every candidate face and keeping the nearest
// feasible projection.
std::vector<double> ClosestToUniform(const GameMatrix& a, double value,
                                     const std::vector<double>& fallback) {
  const int k = static_cast<int>(a.rows());
  const int c = static_cast<int>(a.cols());
  const int n = k + c;
  const double tol = kFeasibilityTolerance * std::max(Scale(a), 1e-300);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(k, 1.0 / k);

  long total = 0;
  {
    // Number of subsets of size <= k - 1.
    double binom = 1.0;
    for (int s = 0; s <= std::min(k - 1, n); ++s) {
      if (s > 0) binom = binom * (n - s + 1) / s;
      total += static_cast<long>(binom);
      if (total > kMaxFaceCandidates) return fallback;
    }
  }

  Eigen::VectorXd best_p;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> subset;
  auto consider = [&]() {
    const int rows = static_cast<int>(subset.size()) + 1;
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(rows, k);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(rows);
    e.row(0).setOnes();
    f[0] = 1.0;
    for (int i = 0; i < static_cast<int>(subset.size()); ++i) {
      const int id = subset[i];
      if (id < k) {
        e(i + 1, id) = 1.0;
      } else {
        e.row(i + 1) = a.col(id - k).transpose();
        f[i + 1] = value;
      }
    }
    const Eigen::VectorXd residual = f - e * u;
    const Eigen::VectorXd step = e.completeOrthogonalDecomposition().solve(residual);
    const Eigen::VectorXd p = u + step;
    if ((e * p - f).cwiseAbs().maxCoeff() > tol + kFeasibilityTolerance) return;
    if (!Feasible(a, p, value, tol)) return;
    const double dist = step.squaredNorm();
    bool better = dist < best_dist - 1e-15;
    if (!better && std::abs(dist - best_dist) <= 1e-15) {
      better = std::lexicographical_compare(p.data(), p.data() + k,
                                            best_p.data(), best_p.data() + k);
    }
    if (better) {
      best_dist = dist;
      best_p = p;
    }
  };
  // Depth-first enumeration of subsets of size <= k - 1.
  auto recurse = [&](auto&& self, int start) -> void {
    consider();
    if (static_cast<int>(subset.size()) == k - 1) return;
    for (int i = start; i < n; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  if (best_p.size() == 0) return fallback;

  std::vector<double> p(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    p[i] = std::max(0.0, best_p[i]);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

double WorstColumnPayoff(const GameMatrix& a, const std::vector<double>& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int y = 0; y < a.cols(); ++y) {
    double s = 0.0;
    for (int k = 0; k < a.rows(); ++k) s += p[k] * a(k, y);
    worst = std::max(worst, s);
  }
  return worst;
}

MixedStrategy SolveZeroSum(const GameMatrix& a) {
  if (a.rows() < 2) throw std::invalid_argument("game needs at least 2 rows");
  if (a.cols() < 1) throw std::invalid_argument("game needs at least 1 column");
  if (!a.allFinite()) throw std::invalid_argument("game entries must be finite");
  const int k = static_cast<int>(a.rows());
  const double scale = Scale(a);
  if (scale == 0.0) return {Uniform(k), 0.0};
  if (k == 2) return SolveTwoRows(a);

  // Shift so every entry is positive; the row player's optimal set is
  // unchanged and the value shifts by the same constant.
  const double shift = 1.0 - a.minCoeff();
  const GameMatrix b = (a.array() + shift).matrix();
  const std::vector<double> u = SimplexPositiveGame(b);
  double total = 0.0;
  for (double v : u) total += v;
  std::vector<double> p(k);
  for (int i = 0; i < k; ++i) p[i] = u[i] / total;
  const double value = WorstColumnPayoff(a, p);

  std::vector<double> tied = ClosestToUniform(a, value, p);
  return {tied, WorstColumnPayoff(a, tied)};
}

}  // namespace omgl
