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

#include "omgl/gftpl.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omgl {
namespace {

double KeyRegret(const ProblemInstance& instance, const GammaColumn& col,
                 GroupHypothesisPair pair) {
  return InstantGroupRegret(instance, pair, col.x, col.y_pred, col.y_true);
}

double DatasetRegret(const ProblemInstance& instance, const GammaColumn& col,
                     GroupHypothesisPair pair) {
  double total = 0.0;
  for (const FakeExample& e : col.dataset) {
    total += e.weight *
             InstantGroupRegret(instance, pair, e.x, e.y_pred, e.y_true);
  }
  return total;
}

void CheckShape(const Eigen::MatrixXd& table,
                const std::vector<GammaColumn>& columns,
                const ProblemInstance& instance) {
  const long rows =
      static_cast<long>(instance.num_groups()) * instance.num_hypotheses();
  if (table.rows() != rows || table.cols() != static_cast<long>(columns.size())) {
    throw std::invalid_argument("perturbation table shape mismatch");
  }
}

}  // namespace

PerturbationMatrix::PerturbationMatrix(std::vector<GammaColumn> columns)
    : columns_(std::move(columns)) {
  for (int j = 0; j < static_cast<int>(columns_.size()); ++j) {
    columns_[j].id = j;
  }
}

double PerturbationMatrix::Entry(const ProblemInstance& instance,
                                 GroupHypothesisPair pair, int j) const {
  return DatasetRegret(instance, columns_.at(j), pair);
}

PerturbationMatrix BuildTransductiveGamma(const std::vector<Context>& contexts,
                                          const ProblemInstance& instance) {
  if (contexts.empty()) throw std::invalid_argument("empty transductive set");
  const ActionSet& actions = instance.actions();
  std::vector<GammaColumn> columns;
  for (Context x : contexts) {
    instance.CheckContext(x);
    for (int y = 0; y < actions.size(); ++y) {
      for (int yp = 0; yp < actions.size(); ++yp) {
        GammaColumn col;
        col.x = x;
        col.y_true = actions.label(y);
        col.y_pred = actions.label(yp);
        col.dataset = {{1.0, x, col.y_true, col.y_pred}};
        columns.push_back(std::move(col));
      }
    }
  }
  return PerturbationMatrix(std::move(columns));
}

Eigen::MatrixXd MaterializeGamma(const PerturbationMatrix& pm,
                                 const ProblemInstance& instance) {
  ScopedGroupAccess scope(GroupAccess::kEvaluation);
  const int num_g = static_cast<int>(instance.groups().size());
  const int num_h = instance.num_hypotheses();
  Eigen::MatrixXd table(static_cast<long>(num_g) * num_h, pm.num_columns());
  for (int h = 0; h < num_h; ++h) {
    for (int g = 0; g < num_g; ++g) {
      for (int j = 0; j < pm.num_columns(); ++j) {
        table(static_cast<long>(h) * num_g + g, j) = pm.Entry(instance, {g, h}, j);
      }
    }
  }
  return table;
}

double CheckApproximability(const Eigen::MatrixXd& table,
                            const std::vector<GammaColumn>& columns,
                            const ProblemInstance& instance) {
  CheckShape(table, columns, instance);
  const int rows = static_cast<int>(table.rows());
  const int cols = static_cast<int>(table.cols());
  // key(r, j) = l-tilde at column j's key for row r.
  Eigen::MatrixXd key(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < cols; ++j) {
      key(r, j) = KeyRegret(instance, columns[j], PairAt(instance, r));
    }
  }
  double slack = std::numeric_limits<double>::infinity();
  for (int j = 0; j < cols; ++j) {
    for (int r = 0; r < rows; ++r) {
      for (int rp = 0; rp < rows; ++rp) {
        const double s = (table(r, j) - table(rp, j)) - (key(r, j) - key(rp, j));
        slack = std::min(slack, s);
      }
    }
  }
  return slack;
}

double CheckApproximability(const PerturbationMatrix& pm,
                            const ProblemInstance& instance) {
  return CheckApproximability(MaterializeGamma(pm, instance), pm.columns(),
                              instance);
}

double CheckImplementability(const Eigen::MatrixXd& table,
                             const std::vector<GammaColumn>& columns,
                             const ProblemInstance& instance) {
  CheckShape(table, columns, instance);
  const int rows = static_cast<int>(table.rows());
  const int cols = static_cast<int>(table.cols());
  Eigen::MatrixXd realized(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < cols; ++j) {
      realized(r, j) = DatasetRegret(instance, columns[j], PairAt(instance, r));
    }
  }
  double worst = 0.0;
  for (int j = 0; j < cols; ++j) {
    for (int r = 0; r < rows; ++r) {
      for (int rp = 0; rp < rows; ++rp) {
        const double d = (table(r, j) - table(rp, j)) -
                         (realized(r, j) - realized(rp, j));
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  return worst;
}

double CheckImplementability(const PerturbationMatrix& pm,
                             const ProblemInstance& instance) {
  return CheckImplementability(MaterializeGamma(pm, instance), pm.columns(),
                               instance);
}

void ValidateGftplConfig(const GftplConfig& cfg) {
  if (!(cfg.gamma_approx > 0.0)) {
    throw std::invalid_argument("gamma must be > 0");
  }
  if (!(cfg.C > 0.0)) throw std::invalid_argument("C must be > 0");
  if (cfg.M < 1) throw std::invalid_argument("M must be >= 1");
}

double LearningRate(const GftplConfig& cfg, double l_star_prev) {
  if (!(l_star_prev >= 0.0)) {
    throw std::invalid_argument("L* must be >= 0");
  }
  return std::min(1.0 / cfg.gamma_approx, cfg.C / std::sqrt(l_star_prev + 1.0));
}

double BestGainSoFar(const GhOracle& oracle, const Trace& history) {
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  return std::max(0.0, oracle.OptGh(q).objective);
}

std::vector<double> DrawLaplaceNoise(int n, Rng& rng) {
  std::vector<double> nu(n);
  for (double& v : nu) v = UnitLaplace(rng);
  return nu;
}

namespace {

void AppendNoiseRecords(const PerturbationMatrix& pm,
                        const std::vector<double>& nu_t,
                        std::vector<RegretRecord>* records) {
  for (const GammaColumn& col : pm.columns()) {
    const double scale = nu_t[col.id];
    for (const FakeExample& e : col.dataset) {
      records->push_back({e.x, e.y_pred, e.y_true, scale * e.weight});
    }
  }
}

}  // namespace

GhResult GftplSampleWithNoise(const GhOracle& oracle, const Trace& history,
                              const PerturbationMatrix& pm,
                              const std::vector<double>& nu_t) {
  if (static_cast<int>(nu_t.size()) != pm.num_columns()) {
    throw std::invalid_argument("noise length must equal the column count");
  }
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  AppendNoiseRecords(pm, nu_t, &q.regret_records);
  return oracle.OptGh(q);
}

GroupHypothesisPair GftplSample(const GhOracle& oracle, const Trace& history,
                                const PerturbationMatrix& pm, double eta_t,
                                Rng& rng) {
  if (!(eta_t > 0.0)) throw std::invalid_argument("eta_t must be > 0");
  std::vector<double> nu = DrawLaplaceNoise(pm.num_columns(), rng);
  for (double& v : nu) v /= eta_t;
  return GftplSampleWithNoise(oracle, history, pm, nu).pair;
}

double DirectPerturbedObjective(const ProblemInstance& instance,
                                const Trace& history,
                                const PerturbationMatrix& pm,
                                const std::vector<double>& nu_t,
                                GroupHypothesisPair pair) {
  double total = 0.0;
  for (const RoundRecord& r : history) {
    total += InstantGroupRegret(instance, pair, r.x, r.y_hat, r.y);
  }
  for (const GammaColumn& col : pm.columns()) {
    total += KeyRegret(instance, col, pair) * nu_t[col.id];
  }
  return total;
}

GftplRoundPlay GftplEmpiricalPlay(const GhOracle& oracle, const Trace& history,
                                  const PerturbationMatrix& pm,
                                  const GftplConfig& cfg, Rng& rng) {
  ValidateGftplConfig(cfg);
  GftplRoundPlay out;
  out.l_star = BestGainSoFar(oracle, history);
  out.eta_t = LearningRate(cfg, out.l_star);

  std::vector<double> frozen;
  if (cfg.freeze_noise) {
    Rng stream = MakeStream(cfg.seed, StreamTag::kLaplace);
    frozen = DrawLaplaceNoise(pm.num_columns(), stream);
  }
  const std::uint64_t key = rng();
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  const size_t base = q.regret_records.size();
  out.play.reserve(cfg.M);
  for (int i = 0; i < cfg.M; ++i) {
    std::vector<double> nu;
    if (cfg.freeze_noise) {
      nu = frozen;
    } else {
      Rng stream = MakeStream(key, StreamTag::kLaplace, i);
      nu = DrawLaplaceNoise(pm.num_columns(), stream);
    }
    for (double& v : nu) v /= out.eta_t;
    q.regret_records.resize(base);
    AppendNoiseRecords(pm, nu, &q.regret_records);
    out.play.push_back(oracle.OptGh(q).pair);
  }
  return out;
}

nlohmann::json GammaToJson(const PerturbationMatrix& pm) {
  nlohmann::json cols = nlohmann::json::array();
  for (const GammaColumn& col : pm.columns()) {
    nlohmann::json data = nlohmann::json::array();
    for (const FakeExample& e : col.dataset) {
      data.push_back({{"weight", e.weight},
                      {"x", e.x.index},
                      {"y", e.y_true.value},
                      {"y_pred", e.y_pred.value}});
    }
    cols.push_back({{"id", col.id},
                    {"x", col.x.index},
                    {"y", col.y_true.value},
                    {"y_pred", col.y_pred.value},
                    {"dataset", data}});
  }
  return {{"num_columns", pm.num_columns()}, {"columns", cols}};
}

PerturbationMatrix GammaFromJson(const nlohmann::json& doc) {
  std::vector<GammaColumn> columns;
  for (const nlohmann::json& c : doc.at("columns")) {
    GammaColumn col;
    col.x = Context{c.at("x").get<int>()};
    col.y_true = ActionLabel{c.at("y").get<int>()};
    col.y_pred = ActionLabel{c.at("y_pred").get<int>()};
    for (const nlohmann::json& e : c.at("dataset")) {
      col.dataset.push_back({e.at("weight").get<double>(),
                             Context{e.at("x").get<int>()},
                             ActionLabel{e.at("y").get<int>()},
                             ActionLabel{e.at("y_pred").get<int>()}});
    }
    columns.push_back(std::move(col));
  }
  return PerturbationMatrix(std::move(columns));
}

}  // namespace omgl
