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

#ifndef OMGL_HARNESS_H_
#define OMGL_HARNESS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "omgl/core.h"
#include "omgl/environments.h"
#include "omgl/ledger.h"

namespace omgl {

enum class Algorithm { kFtplSmooth, kGftplTransductive, kFtl, kOnlineBatchWrapper };

std::string AlgorithmName(Algorithm a);
Algorithm ParseAlgorithm(const std::string& name);

struct AlgorithmParams {
  // Unset means the theory value sqrt(T log(T / sigma) / sigma).
  std::optional<double> eta;
  // Unset means max(16, T / sqrt(sigma)) capped at 4096.
  std::optional<int> n = 64;
  int M = 50;
  double gamma = 1.0;
  double C = 1.0;
  bool freeze_noise = false;
  // online-batch-wrapper plug-in: "erm" or "constant".
  std::string batch_learner = "erm";
  int constant_label = 1;
};

struct ExperimentConfig {
  // Instance description: {"generator": {...}}, {"inline": {...}} or
  // {"file": "path"}.
  nlohmann::json instance;
  Algorithm algorithm = Algorithm::kFtplSmooth;
  AlgorithmParams params;
  ContextPolicy contexts;
  // Label policy as written; hypothesis references are resolved against the
  // instance at run time.
  nlohmann::json labels;
  int horizon = 100;
  std::vector<std::uint64_t> seeds = {1};
  std::string output_dir = ".";
  std::string run_id = "run";
  bool diagnostics = false;
  // Optional sweep grid: JSON pointer -> list of values.
  nlohmann::json sweep;
};

// Throws std::invalid_argument with a descriptive message on any schema or
// range violation. The instance is built and the label policy resolved as
// part of validation.
ExperimentConfig ParseConfig(const nlohmann::json& doc);
ExperimentConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const ExperimentConfig& cfg);

ProblemInstance BuildInstance(const nlohmann::json& spec);
LabelPolicy ResolveLabelPolicy(const nlohmann::json& doc,
                               const ProblemInstance& instance);

struct SeedReport {
  std::uint64_t seed = 0;
  std::string run_id;
  bool ok = true;
  std::string error;
  int rounds = 0;
  int worst_group = 0;
  std::string worst_group_description;
  double worst_group_regret = 0.0;
  std::int64_t worst_group_appearances = 0;
  std::int64_t gh_oracle_calls = 0;
  std::int64_t h_oracle_calls = 0;
  int expected_gh_calls_per_round = 0;
  int expected_h_calls_per_round = 0;
  std::int64_t learner_group_list_accesses = 0;
  double max_lp_value = 0.0;
  double max_amf_value = 0.0;
  double wall_time_s = 0.0;
  std::string rounds_csv;
  std::string groups_csv;
  std::vector<GroupLedgerEntry> groups;
  Trace trace;
  std::vector<RoundDiagnostic> diagnostics;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SeedReport> seeds;
  double eta = 0.0;
  int n = 0;
  std::vector<int> transductive_set;
  std::string report_path;
};

struct RunOptions {
  // Write CSV and JSON files under config.output_dir.
  bool write_files = true;
  // Keep full traces and ledger entries in the returned report.
  bool keep_traces = true;
  // Seeds run on up to this many threads; 0 picks the hardware count.
  int threads = 0;
};

// Runs every seed. Per-seed failures (including an oracle-call count that
// differs from the per-round contract) are recorded in that seed's report
// with a partial trace dump; the other seeds still run.
RunReport RunExperiment(const ExperimentConfig& cfg,
                        const RunOptions& options = {});

// Single seed, throwing on failure.
SeedReport RunSeed(const ExperimentConfig& cfg, const ProblemInstance& instance,
                   std::uint64_t seed, const RunOptions& options = {});

nlohmann::json ReportToJson(const RunReport& report);

struct SweepCell {
  nlohmann::json assignment;  // pointer -> value
  nlohmann::json doc;         // full config document for the cell
};

// Cross product of the sweep axes. Axes are taken in sorted pointer order
// with the last axis fastest. Throws std::invalid_argument for an empty grid or axis.
std::vector<SweepCell> ExpandSweep(const nlohmann::json& base_doc);

struct SweepReport {
  std::vector<SweepCell> cells;
  std::vector<RunReport> runs;
  std::vector<std::string> errors;  // per cell; empty when the cell ran
  // Written paths; empty when files are off.
  std::string summary_csv;
  std::string cells_csv;
};

// Runs every cell; a failing cell is recorded and the sweep continues.
// Writes {run_id}_summary.csv (one row per cell and seed with a sqrt(T)
// reference column) and {run_id}_sweep.csv (mean worst-group regret per
// cell).
SweepReport Sweep(const nlohmann::json& base_doc, const RunOptions& options = {});

}  // namespace omgl

#endif  // OMGL_HARNESS_H_
