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

#include "omgl/ledger.h"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace omgl {
namespace {

// Folds the rounds where g is active into one record per (x, y).
std::vector<LabeledRecord> GroupRecords(const ProblemInstance& instance,
                                        const Group& g, const Trace& trace) {
  const int k = instance.actions().size();
  std::vector<double> counts(
      static_cast<size_t>(instance.universe_size()) * k, 0.0);
  for (const RoundRecord& r : trace) {
    if (g.Contains(r.x)) counts[r.x.index * k + instance.ActionIndex(r.y)] += 1.0;
  }
  std::vector<LabeledRecord> records;
  for (int x = 0; x < instance.universe_size(); ++x) {
    for (int a = 0; a < k; ++a) {
      if (counts[x * k + a] > 0.0) {
        records.push_back({Context{x}, instance.actions().label(a),
                           counts[x * k + a]});
      }
    }
  }
  return records;
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

}  // namespace

Ledger::Ledger(const ProblemInstance& instance)
    : instance_(instance),
      num_groups_(instance.num_groups()),
      m_(instance.universe_size()),
      member_(static_cast<size_t>(m_) * num_groups_, 0),
      appearances_(num_groups_, 0),
      learner_loss_(num_groups_, 0.0) {
  ScopedGroupAccess scope(GroupAccess::kEvaluation);
  const std::vector<Group>& groups = instance.groups();
  for (int g = 0; g < num_groups_; ++g) {
    for (int x = 0; x < m_; ++x) {
      member_[static_cast<size_t>(x) * num_groups_ + g] =
          groups[g].Contains(Context{x});
    }
  }
}

void Ledger::RecordRound(const RoundRecord& r) {
  if (!trace_.empty() && r.t <= trace_.back().t) {
    throw std::logic_error("ledger received round " + std::to_string(r.t) +
                           " after round " + std::to_string(trace_.back().t));
  }
  instance_.CheckContext(r.x);
  const double loss = instance_.Loss(r.y_hat, r.y);
  const char* row = &member_[static_cast<size_t>(r.x.index) * num_groups_];
  for (int g = 0; g < num_groups_; ++g) {
    if (row[g]) {
      ++appearances_[g];
      learner_loss_[g] += loss;
    }
  }
  trace_.push_back(r);
}

std::vector<GroupLedgerEntry> Ledger::Finalize(const HOracle& oracle) const {
  std::vector<GroupLedgerEntry> entries(num_groups_);
  for (int g = 0; g < num_groups_; ++g) {
    GroupLedgerEntry& e = entries[g];
    e.group = g;
    e.appearances = appearances_[g];
    e.learner_loss = learner_loss_[g];
    e.best_loss =
        e.appearances == 0
            ? 0.0
            : BestInHindsight(instance_, oracle, instance_.group(g), trace_);
    e.regret = e.learner_loss - e.best_loss;
  }
  return entries;
}

double BestInHindsight(const ProblemInstance& instance, const HOracle& oracle,
                       const Group& g, const Trace& trace) {
  const std::vector<LabeledRecord> records = GroupRecords(instance, g, trace);
  if (records.empty()) return 0.0;
  const int h = oracle.OptH(records, instance.loss());
  return WeightedLoss(instance, h, records, instance.loss());
}

double GroupRegret(const ProblemInstance& instance, const HOracle& oracle,
                   const Group& g, const Trace& trace) {
  double learner = 0.0;
  bool active = false;
  for (const RoundRecord& r : trace) {
    if (g.Contains(r.x)) {
      learner += instance.Loss(r.y_hat, r.y);
      active = true;
    }
  }
  if (!active) return 0.0;
  return learner - BestInHindsight(instance, oracle, g, trace);
}

std::pair<int, double> WorstGroupRegret(const ProblemInstance& instance,
                                        const HOracle& oracle,
                                        const Trace& trace) {
  ScopedGroupAccess scope(GroupAccess::kEvaluation);
  const std::vector<Group>& groups = instance.groups();
  std::vector<double> regret(groups.size());
  double best = -std::numeric_limits<double>::infinity();
  for (size_t g = 0; g < groups.size(); ++g) {
    regret[g] = GroupRegret(instance, oracle, groups[g], trace);
    best = std::max(best, regret[g]);
  }
  const double tol = 1e-12 * std::max<double>(1.0, trace.size());
  for (size_t g = 0; g < groups.size(); ++g) {
    if (regret[g] >= best - tol) return {static_cast<int>(g), regret[g]};
  }
  return {0, 0.0};
}

void ExportRoundsCsv(const Trace& trace,
                     const std::vector<RoundDiagnostic>* diagnostics,
                     const std::string& path) {
  if (diagnostics && diagnostics->size() != trace.size()) {
    throw std::invalid_argument("one diagnostic row per round required");
  }
  std::ofstream out = OpenOut(path);
  out << kRoundsSchema << "\n" << kRoundsHeader;
  if (diagnostics) out << kRoundsDiagnosticsHeader;
  out << "\n";
  for (size_t i = 0; i < trace.size(); ++i) {
    const RoundRecord& r = trace[i];
    out << r.t << ',' << r.x.index << ',' << r.y_hat.value << ','
        << r.y.value << ',' << Num(r.bernoulli_p) << ',' << Num(r.lp_value)
        << ',' << r.gh_oracle_calls << ',' << r.h_oracle_calls;
    if (diagnostics) {
      const RoundDiagnostic& d = (*diagnostics)[i];
      out << ',' << Num(d.amf_value) << ',' << Num(d.epsilon_estimate);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

void ExportGroupsCsv(const ProblemInstance& instance,
                     const std::vector<GroupLedgerEntry>& entries,
                     const std::string& path) {
  std::ofstream out = OpenOut(path);
  out << kGroupsSchema << "\n" << kGroupsHeader << "\n";
  for (const GroupLedgerEntry& e : entries) {
    const double per_sqrt =
        e.appearances > 0 ? e.regret / std::sqrt(static_cast<double>(e.appearances))
                          : 0.0;
    out << e.group << ",\"" << DescribeGroup(instance.group(e.group)) << "\","
        << e.appearances << ',' << Num(e.learner_loss) << ','
        << Num(e.best_loss) << ',' << Num(e.regret) << ',' << Num(per_sqrt)
        << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

RoundsCsv ImportRoundsCsv(const std::string& path) {
  std::ifstream in = OpenIn(path);
  RoundsCsv result;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      const std::string plain = kRoundsHeader;
      if (line == plain + kRoundsDiagnosticsHeader) {
        result.has_diagnostics = true;
      } else if (line != plain) {
        throw std::runtime_error("unexpected rounds header in " + path);
      }
      continue;
    }
    const std::vector<std::string> f = SplitCsv(line);
    const size_t want = result.has_diagnostics ? 10 : 8;
    if (f.size() != want) throw std::runtime_error("bad rounds row: " + line);
    RoundRecord r;
    r.t = std::stoi(f[0]);
    r.x = Context{std::stoi(f[1])};
    r.y_hat = ActionLabel{std::stoi(f[2])};
    r.y = ActionLabel{std::stoi(f[3])};
    r.bernoulli_p = std::stod(f[4]);
    r.lp_value = std::stod(f[5]);
    r.gh_oracle_calls = std::stoi(f[6]);
    r.h_oracle_calls = std::stoi(f[7]);
    result.trace.push_back(r);
    if (result.has_diagnostics) {
      result.diagnostics.push_back(
          {r.t, std::stod(f[8]), r.lp_value, std::stod(f[9])});
    }
  }
  return result;
}

std::vector<GroupLedgerEntry> ImportGroupsCsv(const std::string& path) {
  std::ifstream in = OpenIn(path);
  std::vector<GroupLedgerEntry> entries;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line != kGroupsHeader) {
        throw std::runtime_error("unexpected groups header in " + path);
      }
      continue;
    }
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 7) throw std::runtime_error("bad groups row: " + line);
    GroupLedgerEntry e;
    e.group = std::stoi(f[0]);
    e.appearances = std::stoll(f[2]);
    e.learner_loss = std::stod(f[3]);
    e.best_loss = std::stod(f[4]);
    e.regret = std::stod(f[5]);
    entries.push_back(e);
  }
  return entries;
}

}  // namespace omgl
