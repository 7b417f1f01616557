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

#include "omgl/ftpl.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omgl {

void ValidateFtplConfig(const FtplConfig& cfg) {
  if (!(cfg.eta >= 0.0) || !std::isfinite(cfg.eta)) {
    throw std::invalid_argument("eta must be finite and >= 0");
  }
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.M < 1) throw std::invalid_argument("M must be >= 1");
}

std::vector<Hallucination> DrawHallucinations(int n, int universe_size,
                                              Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<Hallucination> hs(n);
  for (Hallucination& h : hs) {
    h.z = Context{UniformIndex(rng, universe_size)};
    h.gamma = StandardGaussian(rng);
  }
  return hs;
}

double PerturbationValue(const ProblemInstance& instance,
                         GroupHypothesisPair pair,
                         const std::vector<Hallucination>& hs, double eta) {
  if (hs.empty()) throw std::invalid_argument("empty hallucination list");
  const Group& g = instance.group(pair.group);
  const Hypothesis& h = instance.hypothesis(pair.hypothesis);
  double total = 0.0;
  for (const Hallucination& hal : hs) {
    if (g.Contains(hal.z)) total += hal.gamma * h.Eval(hal.z).value;
  }
  return eta * total / std::sqrt(static_cast<double>(hs.size()));
}

std::vector<RegretRecord> HistoryRecords(const Trace& history) {
  std::vector<RegretRecord> records;
  records.reserve(history.size());
  for (const RoundRecord& r : history) {
    records.push_back({r.x, r.y_hat, r.y, 1.0});
  }
  return records;
}

std::vector<CorrelationRecord> HallucinationRecords(
    const std::vector<Hallucination>& hs, double eta) {
  std::vector<CorrelationRecord> records;
  records.reserve(hs.size());
  const double scale = eta / std::sqrt(static_cast<double>(hs.size()));
  for (const Hallucination& h : hs) records.push_back({h.z, scale * h.gamma});
  return records;
}

GroupHypothesisPair FtplSample(const ProblemInstance& instance,
                               const GhOracle& oracle, const Trace& history,
                               const FtplConfig& cfg, Rng& rng) {
  ValidateFtplConfig(cfg);
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  q.correlation_records = HallucinationRecords(
      DrawHallucinations(cfg.n, instance.universe_size(), rng), cfg.eta);
  return oracle.OptGh(q).pair;
}

EmpiricalPlay FtplEmpiricalPlay(const ProblemInstance& instance,
                                const GhOracle& oracle, const Trace& history,
                                const FtplConfig& cfg, Rng& rng) {
  ValidateFtplConfig(cfg);
  const std::uint64_t key = rng();
  OracleQuery q;
  q.regret_records = HistoryRecords(history);
  EmpiricalPlay play;
  play.reserve(cfg.M);
  for (int i = 0; i < cfg.M; ++i) {
    Rng stream = MakeStream(key, StreamTag::kHallucination, i);
    q.correlation_records = HallucinationRecords(
        DrawHallucinations(cfg.n, instance.universe_size(), stream), cfg.eta);
    play.push_back(oracle.OptGh(q).pair);
  }
  return play;
}

SmoothTheoryParameters TheoryParameters(int T, double sigma, int K) {
  if (T < 2) throw std::invalid_argument("T must be >= 2");
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1]");
  }
  if (K < 2) throw std::invalid_argument("K must be >= 2");
  const double log_t = std::log(static_cast<double>(T));
  SmoothTheoryParameters p;
  p.delta = std::log(2.0 * std::log(static_cast<double>(K)) + 0.5 * log_t) /
            (2.0 * log_t);
  p.M = std::pow(static_cast<double>(T), 1.0 + p.delta);
  p.n = T / std::sqrt(sigma);
  p.eta = TheoryEta(T, sigma);
  return p;
}

double TheoryEta(int T, double sigma) {
  return std::sqrt(T * std::log(T / sigma) / sigma);
}

int AutoHallucinationCount(int T, double sigma) {
  const double n = std::max(16.0, T / std::sqrt(sigma));
  return static_cast<int>(std::min(4096.0, std::ceil(n)));
}

}  // namespace omgl
