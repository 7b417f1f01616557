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

// omgl: command-line experiment harness.
//
//   omgl run --config cfg.json [--seed 7] [--out dir] [--diagnostics]
//   omgl sweep --config grid.json [--out dir]
//   omgl validate-config --config cfg.json
//   omgl theory-params --T 2000 --sigma 1 --K 2

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "omgl/ftpl.h"
#include "omgl/harness.h"

namespace {

using nlohmann::json;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool diagnostics = false;
  bool freeze_noise = false;
};

json ReadDoc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path + " is not JSON: " + e.what());
  }
}

void Apply(const Overrides& o, json& doc) {
  if (o.seed) {
    doc.erase("seeds");
    doc["seed"] = *o.seed;
  }
  if (!o.out.empty()) doc["output_dir"] = o.out;
  if (o.diagnostics) doc["diagnostics"] = true;
  if (o.freeze_noise) doc["params"]["freeze_noise"] = true;
}

int Run(const std::string& path, const Overrides& o) {
  json doc = ReadDoc(path);
  Apply(o, doc);
  doc.erase("sweep");
  const omgl::ExperimentConfig cfg = omgl::ParseConfig(doc);
  omgl::RunOptions options;
  options.keep_traces = false;
  const omgl::RunReport report = omgl::RunExperiment(cfg, options);
  int failures = 0;
  for (const omgl::SeedReport& s : report.seeds) {
    if (s.ok) {
      std::printf("seed %llu: T=%d worst group %s regret %.6g (T_g=%lld) "
                  "gh calls %lld h calls %lld %.2fs\n",
                  static_cast<unsigned long long>(s.seed), s.rounds,
                  s.worst_group_description.c_str(), s.worst_group_regret,
                  static_cast<long long>(s.worst_group_appearances),
                  static_cast<long long>(s.gh_oracle_calls),
                  static_cast<long long>(s.h_oracle_calls), s.wall_time_s);
    } else {
      ++failures;
      std::fprintf(stderr, "seed %llu failed after %d rounds: %s\n",
                   static_cast<unsigned long long>(s.seed), s.rounds,
                   s.error.c_str());
    }
  }
  std::printf("report: %s\n", report.report_path.c_str());
  return failures == 0 ? 0 : 1;
}

int RunSweep(const std::string& path, const Overrides& o) {
  json doc = ReadDoc(path);
  Apply(o, doc);
  omgl::RunOptions options;
  options.keep_traces = false;
  const omgl::SweepReport report = omgl::Sweep(doc, options);
  int failures = 0;
  for (size_t i = 0; i < report.cells.size(); ++i) {
    if (!report.errors[i].empty()) {
      ++failures;
      std::fprintf(stderr, "cell %zu %s failed: %s\n", i,
                   report.cells[i].assignment.dump().c_str(),
                   report.errors[i].c_str());
    }
  }
  std::printf("summary: %s\ncells: %s\n", report.summary_csv.c_str(),
              report.cells_csv.c_str());
  return failures == 0 ? 0 : 1;
}

int Validate(const std::string& path) {
  json doc = ReadDoc(path);
  if (doc.contains("sweep")) {
    for (const omgl::SweepCell& cell : omgl::ExpandSweep(doc)) {
      omgl::ParseConfig(cell.doc);
    }
  } else {
    omgl::ParseConfig(doc);
  }
  std::printf("%s: ok\n", path.c_str());
  return 0;
}

int TheoryParams(int T, double sigma, int K) {
  const omgl::SmoothTheoryParameters p = omgl::TheoryParameters(T, sigma, K);
  json out = {{"T", T},         {"sigma", sigma}, {"K", K},
              {"delta", p.delta}, {"M", p.M},       {"n", p.n},
              {"eta", p.eta}};
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oracle-efficient online multi-group learning harness"};
  app.require_subcommand(1);

  std::string config;
  Overrides overrides;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("--config", config, "config JSON")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "run this seed only");
  run->add_option("--out", overrides.out, "output directory");
  run->add_flag("--diagnostics", overrides.diagnostics,
                "record AMF and epsilon diagnostics");
  run->add_flag("--freeze-gftpl-noise", overrides.freeze_noise,
                "draw the GFTPL noise once per run");

  CLI::App* sweep = app.add_subcommand("sweep", "run the cross product of a grid");
  sweep->add_option("--config", config, "config JSON with a sweep grid")
      ->required();
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "run this seed only");
  sweep->add_option("--out", overrides.out, "output directory");
  sweep->add_flag("--diagnostics", overrides.diagnostics,
                  "record AMF and epsilon diagnostics");
  sweep->add_flag("--freeze-gftpl-noise", overrides.freeze_noise,
                  "draw the GFTPL noise once per run");

  CLI::App* validate =
      app.add_subcommand("validate-config", "check a config without running it");
  validate->add_option("--config", config, "config JSON")->required();

  int T = 0;
  double sigma = 1.0;
  int K = 2;
  CLI::App* theory =
      app.add_subcommand("theory-params", "print the advisory parameter values");
  theory->add_option("--T", T, "horizon")->required()->check(CLI::Range(2, 1 << 30));
  theory->add_option("--sigma", sigma, "smoothness")->check(CLI::Range(1e-12, 1.0));
  theory->add_option("--K", K, "action count")->check(CLI::Range(2, 1 << 20));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (*seed_opt) overrides.seed = seed;
      return Run(config, overrides);
    }
    if (*sweep) {
      if (*sweep_seed) overrides.seed = seed;
      return RunSweep(config, overrides);
    }
    if (*validate) return Validate(config);
    if (*theory) return TheoryParams(T, sigma, K);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
