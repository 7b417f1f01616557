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

#ifndef OMGL_LEDGER_H_
#define OMGL_LEDGER_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "omgl/core.h"
#include "omgl/oracles.h"

namespace omgl {

struct GroupLedgerEntry {
  int group = 0;
  std::int64_t appearances = 0;  // T_g
  double learner_loss = 0.0;
  double best_loss = 0.0;
  double regret = 0.0;
};

// Per-round diagnostics appended to the rounds file when enabled.
struct RoundDiagnostic {
  int t = 0;
  double amf_value = 0.0;
  double lp_value = 0.0;
  double epsilon_estimate = 0.0;
};

// Incremental per-group accounting. Reads the full group list once at
// construction under the evaluation role.
class Ledger {
 public:
  explicit Ledger(const ProblemInstance& instance);

  // Throws std::logic_error unless r.t exceeds every recorded round index.
  void RecordRound(const RoundRecord& r);

  const Trace& trace() const { return trace_; }
  int num_groups() const { return num_groups_; }
  std::int64_t appearances(int g) const { return appearances_.at(g); }
  double learner_loss(int g) const { return learner_loss_.at(g); }

  // Adds the best-in-hindsight side through opt_h, one call per group.
  std::vector<GroupLedgerEntry> Finalize(const HOracle& oracle) const;

 private:
  const ProblemInstance& instance_;
  int num_groups_;
  int m_;
  // member_[x * |G| + g] = g(x).
  std::vector<char> member_;
  std::vector<std::int64_t> appearances_;
  std::vector<double> learner_loss_;
  Trace trace_;
};

// Learner loss on g's rounds minus min over H of the same, by opt_h with
// weights g(x_t).
double GroupRegret(const ProblemInstance& instance, const HOracle& oracle,
                   const Group& g, const Trace& trace);

// Best-in-hindsight loss on g's rounds.
double BestInHindsight(const ProblemInstance& instance, const HOracle& oracle,
                       const Group& g, const Trace& trace);

// (group index, regret) maximizing regret over every group, lowest index on
// ties. Enumerates G under the evaluation role.
std::pair<int, double> WorstGroupRegret(const ProblemInstance& instance,
                                        const HOracle& oracle,
                                        const Trace& trace);

inline constexpr char kRoundsSchema[] = "# omgl rounds csv v1";
inline constexpr char kGroupsSchema[] = "# omgl groups csv v1";
inline constexpr char kRoundsHeader[] =
    "t,x,y_hat,y,p,lambda,gh_oracle_calls,h_oracle_calls";
inline constexpr char kRoundsDiagnosticsHeader[] =
    ",amf_value,epsilon_estimate";
inline constexpr char kGroupsHeader[] =
    "group_id,group,T_g,learner_loss,best_loss,regret,regret_per_sqrt_Tg";

// Rounds file: schema comment, header, one row per round. Diagnostics
// columns are appended when diagnostics is non-null (one entry per round).
void ExportRoundsCsv(const Trace& trace,
                     const std::vector<RoundDiagnostic>* diagnostics,
                     const std::string& path);
void ExportGroupsCsv(const ProblemInstance& instance,
                     const std::vector<GroupLedgerEntry>& entries,
                     const std::string& path);

struct RoundsCsv {
  Trace trace;
  std::vector<RoundDiagnostic> diagnostics;
  bool has_diagnostics = false;
};

RoundsCsv ImportRoundsCsv(const std::string& path);
std::vector<GroupLedgerEntry> ImportGroupsCsv(const std::string& path);

}  // namespace omgl

#endif  // OMGL_LEDGER_H_
