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

#include "omgl/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "omgl/amf.h"
#include "omgl/baselines.h"
#include "omgl/ftpl.h"
#include "omgl/gftpl.h"
#include "omgl/h_player.h"
#include "omgl/instance_io.h"
#include "omgl/oracles.h"
#include "omgl/rng.h"

namespace omgl {

using nlohmann::json;

namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void RejectUnknownKeys(const json& doc, const std::set<std::string>& allowed,
                       const std::string& where) {
  Require(doc.is_object(), where + " must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    Require(allowed.count(it.key()) > 0,
            "unknown key '" + it.key() + "' in " + where);
  }
}

double SigmaOf(const ExperimentConfig& cfg) { return cfg.contexts.sigma; }

// -- Learners -----------------------------------------------------------------

struct LearnerStep {
  ActionLabel y_hat;
  double p = 0.0;
  double lambda = 0.0;
  EmpiricalPlay play;
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual LearnerStep Act(int t, Context x, const Trace& history) = 0;
  virtual int expected_gh_calls() const = 0;
  virtual int expected_h_calls() const = 0;
  // An independent play for the same round, for the epsilon diagnostic.
  virtual EmpiricalPlay ShadowPlay(int, const Trace&, const GhOracle&) {
    return {};
  }
};

LearnerStep BestResponse(const ProblemInstance& instance,
                         const HOracle& h_oracle, EmpiricalPlay play,
                         Context x, Rng& action_rng) {
  const std::vector<int> realizers = RealizableActions(instance, h_oracle, x);
  const GameMatrix game = BuildGameMatrix(instance, play, x, realizers);
  const MixedStrategy strategy = SolveZeroSum(game);
  const HPlayerAction action =
      Act(instance, strategy, realizers, x, action_rng);
  LearnerStep step;
  step.y_hat = action.y_hat;
  step.p = strategy.probs[0];
  step.lambda = strategy.value;
  step.play = std::move(play);
  return step;
}

class FtplLearner : public Learner {
 public:
  FtplLearner(const ProblemInstance& instance, const GhOracle& gh,
              const HOracle& h, FtplConfig cfg)
      : instance_(instance), gh_(gh), h_(h), cfg_(cfg) {
    ValidateFtplConfig(cfg_);
  }

  LearnerStep Act(int t, Context x, const Trace& history) override {
    Rng play_rng = MakeStream(cfg_.seed, StreamTag::kHallucination, t);
    EmpiricalPlay play =
        FtplEmpiricalPlay(instance_, gh_, history, cfg_, play_rng);
    Rng action_rng = MakeStream(cfg_.seed, StreamTag::kAction, t);
    return BestResponse(instance_, h_, std::move(play), x, action_rng);
  }
  int expected_gh_calls() const override { return cfg_.M; }
  int expected_h_calls() const override { return instance_.actions().size(); }

  EmpiricalPlay ShadowPlay(int t, const Trace& history,
                           const GhOracle& oracle) override {
    Rng rng = MakeStream(cfg_.seed, StreamTag::kTest, t);
    return FtplEmpiricalPlay(instance_, oracle, history, cfg_, rng);
  }

 private:
  const ProblemInstance& instance_;
  const GhOracle& gh_;
  const HOracle& h_;
  FtplConfig cfg_;
};

class GftplLearner : public Learner {
 public:
  GftplLearner(const ProblemInstance& instance, const GhOracle& gh,
               const HOracle& h, GftplConfig cfg,
               const std::vector<Context>& revealed)
      : instance_(instance),
        gh_(gh),
        h_(h),
        cfg_(cfg),
        gamma_(BuildTransductiveGamma(revealed, instance)) {
    ValidateGftplConfig(cfg_);
  }

  LearnerStep Act(int t, Context x, const Trace& history) override {
    Rng play_rng = MakeStream(cfg_.seed, StreamTag::kLaplace, t);
    GftplRoundPlay round = GftplEmpiricalPlay(gh_, history, gamma_, cfg_, play_rng);
    Rng action_rng = MakeStream(cfg_.seed, StreamTag::kAction, t);
    return BestResponse(instance_, h_, std::move(round.play), x, action_rng);
  }
  int expected_gh_calls() const override { return cfg_.M + 1; }
  int expected_h_calls() const override { return instance_.actions().size(); }

  EmpiricalPlay ShadowPlay(int t, const Trace& history,
                           const GhOracle& oracle) override {
    Rng rng = MakeStream(cfg_.seed, StreamTag::kTest, t);
    return GftplEmpiricalPlay(oracle, history, gamma_, cfg_, rng).play;
  }

 private:
  const ProblemInstance& instance_;
  const GhOracle& gh_;
  const HOracle& h_;
  GftplConfig cfg_;
  PerturbationMatrix gamma_;
};

LearnerStep PureStep(const ProblemInstance& instance, ActionLabel y_hat) {
  LearnerStep step;
  step.y_hat = y_hat;
  step.p = instance.ActionIndex(y_hat) == 0 ? 1.0 : 0.0;
  step.lambda = 0.0;
  return step;
}

class FtlLearner : public Learner {
 public:
  FtlLearner(const ProblemInstance& instance, const HOracle& h)
      : instance_(instance), h_(h) {}
  LearnerStep Act(int, Context x, const Trace& history) override {
    return PureStep(instance_, FtlPredict(instance_, h_, history, x));
  }
  int expected_gh_calls() const override { return 0; }
  int expected_h_calls() const override { return 1; }

 private:
  const ProblemInstance& instance_;
  const HOracle& h_;
};

class WrapperLearner : public Learner {
 public:
  WrapperLearner(const ProblemInstance& instance, const HOracle& h,
                 const AlgorithmParams& params)
      : instance_(instance) {
    if (params.batch_learner == "erm") {
      batch_ = std::make_unique<ErmAdapter>(instance, h);
      h_calls_ = 1;
    } else if (params.batch_learner == "constant") {
      batch_ = std::make_unique<ConstantLearner>(ActionLabel{params.constant_label});
      h_calls_ = 0;
    } else {
      throw std::invalid_argument("unknown batch learner '" +
                                  params.batch_learner + "'");
    }
    wrapper_ = std::make_unique<OnlineBatchWrapper>(*batch_);
  }
  LearnerStep Act(int, Context x, const Trace& history) override {
    return PureStep(instance_, wrapper_->Predict(instance_, history, x));
  }
  int expected_gh_calls() const override { return 0; }
  int expected_h_calls() const override { return h_calls_; }

 private:
  const ProblemInstance& instance_;
  std::unique_ptr<BatchMultiGroupLearner> batch_;
  std::unique_ptr<OnlineBatchWrapper> wrapper_;
  int h_calls_ = 0;
};

double ResolveEta(const ExperimentConfig& cfg) {
  if (cfg.params.eta) return *cfg.params.eta;
  if (cfg.horizon < 2) return TheoryEta(2, SigmaOf(cfg));
  return TheoryEta(cfg.horizon, SigmaOf(cfg));
}

int ResolveN(const ExperimentConfig& cfg) {
  if (cfg.params.n) return *cfg.params.n;
  return AutoHallucinationCount(cfg.horizon, SigmaOf(cfg));
}

std::unique_ptr<Learner> MakeLearner(const ExperimentConfig& cfg,
                                     const ProblemInstance& instance,
                                     const GhOracle& gh, const HOracle& h,
                                     const Nature& nature, std::uint64_t seed) {
  switch (cfg.algorithm) {
    case Algorithm::kFtplSmooth: {
      FtplConfig f;
      f.eta = ResolveEta(cfg);
      f.n = ResolveN(cfg);
      f.M = cfg.params.M;
      f.seed = seed;
      return std::make_unique<FtplLearner>(instance, gh, h, f);
    }
    case Algorithm::kGftplTransductive: {
      GftplConfig g;
      g.gamma_approx = cfg.params.gamma;
      g.C = cfg.params.C;
      g.M = cfg.params.M;
      g.seed = seed;
      g.freeze_noise = cfg.params.freeze_noise;
      return std::make_unique<GftplLearner>(instance, gh, h, g,
                                            nature.revealed().contexts);
    }
    case Algorithm::kFtl:
      return std::make_unique<FtlLearner>(instance, h);
    case Algorithm::kOnlineBatchWrapper:
      return std::make_unique<WrapperLearner>(instance, h, cfg.params);
  }
  throw std::invalid_argument("unknown algorithm");
}

std::string SeedRunId(const ExperimentConfig& cfg, std::uint64_t seed) {
  return cfg.run_id + "_seed" + std::to_string(seed);
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void RunSeedInto(const ExperimentConfig& cfg, const ProblemInstance& instance,
                 std::uint64_t seed, const RunOptions& options,
                 SeedReport* out) {
  const auto start = std::chrono::steady_clock::now();
  out->seed = seed;
  out->run_id = SeedRunId(cfg, seed);

  const std::int64_t learner_access_before =
      instance.group_list_accesses(GroupAccess::kLearner);

  // Oracles cache G at construction under the oracle role.
  ExactHOracle learner_h(instance);
  ExactGhOracle learner_gh(instance);
  ExactHOracle eval_h(instance);
  ExactGhOracle shadow_gh(instance);

  Nature nature(instance, cfg.contexts, ResolveLabelPolicy(cfg.labels, instance),
                seed);
  std::unique_ptr<Learner> learner =
      MakeLearner(cfg, instance, learner_gh, learner_h, nature, seed);
  out->expected_gh_calls_per_round = learner->expected_gh_calls();
  out->expected_h_calls_per_round = learner->expected_h_calls();

  Ledger ledger(instance);
  Trace& history = out->trace;
  std::map<int, double> amf_cache;
  out->max_lp_value = -std::numeric_limits<double>::infinity();
  out->max_amf_value = -std::numeric_limits<double>::infinity();

  for (int t = 1; t <= cfg.horizon; ++t) {
    const Context x = nature.NextContext(t, history);
    const std::int64_t gh_before = learner_gh.calls();
    const std::int64_t h_before = learner_h.calls();
    LearnerStep step = learner->Act(t, x, history);
    const int gh_calls = static_cast<int>(learner_gh.calls() - gh_before);
    const int h_calls = static_cast<int>(learner_h.calls() - h_before);
    const ActionLabel y = nature.label_sees_prediction()
                              ? nature.NextLabelSeeingPrediction(t, step.y_hat)
                              : nature.NextLabel(t, history, x);

    RoundRecord rec;
    rec.t = t;
    rec.x = x;
    rec.y_hat = step.y_hat;
    rec.y = y;
    rec.bernoulli_p = step.p;
    rec.lp_value = step.lambda;
    rec.gh_oracle_calls = gh_calls;
    rec.h_oracle_calls = h_calls;

    if (cfg.diagnostics) {
      RoundDiagnostic d;
      d.t = t;
      d.lp_value = step.lambda;
      auto it = amf_cache.find(x.index);
      if (it == amf_cache.end()) {
        it = amf_cache.emplace(x.index, AmfValue(instance, x)).first;
      }
      d.amf_value = it->second;
      if (!step.play.empty()) {
        const EmpiricalPlay shadow = learner->ShadowPlay(t, history, shadow_gh);
        d.epsilon_estimate =
            std::abs(MeanPlayRegret(instance, step.play, x, rec.y_hat, y) -
                     MeanPlayRegret(instance, shadow, x, rec.y_hat, y));
      }
      out->max_amf_value = std::max(out->max_amf_value, d.amf_value);
      out->diagnostics.push_back(d);
    }

    history.push_back(rec);
    ledger.RecordRound(rec);
    out->rounds = t;
    out->max_lp_value = std::max(out->max_lp_value, rec.lp_value);

    if (gh_calls != learner->expected_gh_calls() ||
        h_calls != learner->expected_h_calls()) {
      throw std::logic_error(
          "round " + std::to_string(t) + ": oracle calls (gh " +
          std::to_string(gh_calls) + ", h " + std::to_string(h_calls) +
          ") differ from the contract (gh " +
          std::to_string(learner->expected_gh_calls()) + ", h " +
          std::to_string(learner->expected_h_calls()) + ")");
    }
  }

  out->gh_oracle_calls = learner_gh.calls();
  out->h_oracle_calls = learner_h.calls();
  out->learner_group_list_accesses =
      instance.group_list_accesses(GroupAccess::kLearner) -
      learner_access_before;

  out->groups = ledger.Finalize(eval_h);
  double worst = -std::numeric_limits<double>::infinity();
  for (const GroupLedgerEntry& e : out->groups) worst = std::max(worst, e.regret);
  const double tol = 1e-12 * std::max(1, cfg.horizon);
  for (const GroupLedgerEntry& e : out->groups) {
    if (e.regret >= worst - tol) {
      out->worst_group = e.group;
      out->worst_group_regret = e.regret;
      out->worst_group_appearances = e.appearances;
      out->worst_group_description = DescribeGroup(instance.group(e.group));
      break;
    }
  }

  if (options.write_files) {
    std::filesystem::create_directories(cfg.output_dir);
    out->rounds_csv = JoinPath(cfg.output_dir, out->run_id + "_rounds.csv");
    out->groups_csv = JoinPath(cfg.output_dir, out->run_id + "_groups.csv");
    ExportRoundsCsv(history, cfg.diagnostics ? &out->diagnostics : nullptr,
                    out->rounds_csv);
    ExportGroupsCsv(instance, out->groups, out->groups_csv);
  }
  out->wall_time_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
}

json HypothesisRef(const json& doc, const ProblemInstance& instance,
                   const std::string& where) {
  if (doc.is_number_integer()) {
    const int h = doc.get<int>();
    Require(h >= 0 && h < instance.num_hypotheses(),
            where + ": hypothesis index out of range");
    return h;
  }
  const Hypothesis target = HypothesisFromJson(doc);
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    if (instance.hypothesis(h) == target) return h;
  }
  throw std::invalid_argument(where + ": hypothesis " +
                              DescribeHypothesis(target) +
                              " is not in the instance");
}

ContextPolicy ParseContextPolicy(const json& doc) {
  RejectUnknownKeys(doc, {"kind", "sigma", "probs", "support", "weights",
                          "window", "tilt"},
                    "adversary.contexts");
  ContextPolicy p;
  p.kind = ParseContextPolicyKind(doc.value("kind", std::string("uniform")));
  p.sigma = doc.value("sigma", 1.0);
  Require(p.sigma > 0.0 && p.sigma <= 1.0,
          "adversary.contexts.sigma must lie in (0, 1]");
  if (doc.contains("probs")) p.probs = doc.at("probs").get<std::vector<double>>();
  if (doc.contains("support")) {
    p.support = doc.at("support").get<std::vector<int>>();
  }
  if (doc.contains("weights")) {
    p.weights = doc.at("weights").get<std::vector<double>>();
  }
  p.window = doc.value("window", 200);
  Require(p.window >= 1, "adversary.contexts.window must be >= 1");
  p.tilt = doc.value("tilt", 1.0);
  Require(p.tilt >= 0.0, "adversary.contexts.tilt must be >= 0");
  return p;
}

json ContextPolicyToJson(const ContextPolicy& p) {
  json doc = {{"kind", ContextPolicyName(p.kind)}, {"sigma", p.sigma}};
  if (!p.probs.empty()) doc["probs"] = p.probs;
  if (!p.support.empty()) doc["support"] = p.support;
  if (!p.weights.empty()) doc["weights"] = p.weights;
  if (p.kind == ContextPolicyKind::kSmoothAdaptive) {
    doc["window"] = p.window;
    doc["tilt"] = p.tilt;
  }
  return doc;
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    if (c == '\n') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kFtplSmooth:
      return "ftpl-smooth";
    case Algorithm::kGftplTransductive:
      return "gftpl-transductive";
    case Algorithm::kFtl:
      return "ftl";
    case Algorithm::kOnlineBatchWrapper:
      return "online-batch-wrapper";
  }
  return "";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kFtplSmooth, Algorithm::kGftplTransductive,
                      Algorithm::kFtl, Algorithm::kOnlineBatchWrapper}) {
    if (AlgorithmName(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

ProblemInstance BuildInstance(const json& spec) {
  RejectUnknownKeys(spec, {"generator", "inline", "file"}, "instance");
  Require(spec.size() == 1,
          "instance needs exactly one of generator, inline, file");
  if (spec.contains("generator")) {
    const json& g = spec.at("generator");
    RejectUnknownKeys(g, {"universe_size", "hypotheses", "groups", "extra_groups"},
                      "instance.generator");
    const int m = g.at("universe_size").get<int>();
    Require(m >= 1, "instance.generator.universe_size must be >= 1");
    const std::string hs = g.value("hypotheses", std::string("thresholds"));
    const std::string gs = g.value("groups", std::string("intervals"));
    Require(hs == "thresholds", "unknown hypothesis family '" + hs + "'");
    Require(gs == "intervals", "unknown group family '" + gs + "'");
    std::vector<Group> groups = AllIntervals(m);
    if (g.contains("extra_groups")) {
      for (const json& e : g.at("extra_groups")) groups.push_back(GroupFromJson(e));
    }
    return ProblemInstance(m, ActionSet::Binary(), AllThresholds(m),
                           std::move(groups), LossTable::ZeroOne(2), 2);
  }
  if (spec.contains("inline")) return InstanceFromJson(spec.at("inline"));
  return LoadInstance(spec.at("file").get<std::string>());
}

LabelPolicy ResolveLabelPolicy(const json& doc, const ProblemInstance& instance) {
  RejectUnknownKeys(doc, {"kind", "noise", "concept", "regions", "window",
                          "sees_prediction"},
                    "adversary.labels");
  LabelPolicy p;
  p.kind = ParseLabelPolicyKind(
      doc.value("kind", std::string("fixed-concept-with-noise")));
  p.noise = doc.value("noise", 0.0);
  p.window = doc.value("window", 200);
  p.sees_prediction = doc.value("sees_prediction", false);
  if (doc.contains("concept")) {
    p.concept_hypothesis =
        HypothesisRef(doc.at("concept"), instance, "adversary.labels.concept")
            .get<int>();
  }
  if (doc.contains("regions")) {
    for (const json& r : doc.at("regions")) {
      RejectUnknownKeys(r, {"group", "concept"}, "adversary.labels.regions[]");
      ConceptRegion region{GroupFromJson(r.at("group")),
                           HypothesisRef(r.at("concept"), instance,
                                         "adversary.labels.regions[].concept")
                               .get<int>()};
      for (int x : region.group.kind() == Group::Kind::kSet
                       ? region.group.members()
                       : std::vector<int>{region.group.lo(), region.group.hi()}) {
        instance.CheckContext(Context{x});
      }
      p.regions.push_back(std::move(region));
    }
  }
  Require(p.sees_prediction ? p.kind == LabelPolicyKind::kHistoryAdaptiveWorstCase
                            : true,
          "sees_prediction applies to history-adaptive-worst-case only");
  ValidateLabelPolicy(p, instance);
  return p;
}

ExperimentConfig ParseConfig(const json& doc) {
  RejectUnknownKeys(doc, {"instance", "algorithm", "params", "adversary",
                          "horizon", "seeds", "seed", "output_dir", "run_id",
                          "diagnostics", "sweep"},
                    "config");
  Require(doc.contains("instance"), "config.instance is required");
  Require(doc.contains("algorithm"), "config.algorithm is required");
  Require(doc.contains("horizon"), "config.horizon is required");

  ExperimentConfig cfg;
  try {
    cfg.instance = doc.at("instance");
    cfg.algorithm = ParseAlgorithm(doc.at("algorithm").get<std::string>());
    cfg.horizon = doc.at("horizon").get<int>();
    Require(cfg.horizon >= 1, "config.horizon must be >= 1");

    if (doc.contains("params")) {
      const json& p = doc.at("params");
      RejectUnknownKeys(p, {"eta", "n", "M", "gamma", "C", "freeze_noise",
                            "batch_learner", "constant_label"},
                        "params");
      if (p.contains("eta")) {
        if (p.at("eta").is_string()) {
          Require(p.at("eta") == "theory", "params.eta must be a number or \"theory\"");
          cfg.params.eta.reset();
        } else {
          const double eta = p.at("eta").get<double>();
          Require(eta >= 0.0 && std::isfinite(eta), "params.eta must be >= 0");
          cfg.params.eta = eta;
        }
      }
      if (p.contains("n")) {
        if (p.at("n").is_string()) {
          Require(p.at("n") == "auto", "params.n must be an integer or \"auto\"");
          cfg.params.n.reset();
        } else {
          const int n = p.at("n").get<int>();
          Require(n >= 1, "params.n must be >= 1");
          cfg.params.n = n;
        }
      }
      cfg.params.M = p.value("M", cfg.params.M);
      Require(cfg.params.M >= 1, "params.M must be >= 1");
      cfg.params.gamma = p.value("gamma", cfg.params.gamma);
      Require(cfg.params.gamma > 0.0, "params.gamma must be > 0");
      cfg.params.C = p.value("C", cfg.params.C);
      Require(cfg.params.C > 0.0, "params.C must be > 0");
      cfg.params.freeze_noise = p.value("freeze_noise", false);
      cfg.params.batch_learner =
          p.value("batch_learner", cfg.params.batch_learner);
      Require(cfg.params.batch_learner == "erm" ||
                  cfg.params.batch_learner == "constant",
              "params.batch_learner must be \"erm\" or \"constant\"");
      cfg.params.constant_label = p.value("constant_label", 1);
    }

    json labels = json::object();
    if (doc.contains("adversary")) {
      const json& a = doc.at("adversary");
      RejectUnknownKeys(a, {"contexts", "labels"}, "adversary");
      if (a.contains("contexts")) cfg.contexts = ParseContextPolicy(a.at("contexts"));
      if (a.contains("labels")) labels = a.at("labels");
    }
    cfg.labels = labels;

    if (doc.contains("seeds")) {
      Require(!doc.contains("seed"), "give either seed or seeds");
      cfg.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
      Require(!cfg.seeds.empty(), "config.seeds must be nonempty");
    } else if (doc.contains("seed")) {
      cfg.seeds = {doc.at("seed").get<std::uint64_t>()};
    }
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    cfg.run_id = doc.value("run_id", cfg.run_id);
    Require(!cfg.run_id.empty() &&
                cfg.run_id.find_first_of("/\\") == std::string::npos,
            "config.run_id must be a nonempty file-name stem");
    cfg.diagnostics = doc.value("diagnostics", false);
    if (doc.contains("sweep")) cfg.sweep = doc.at("sweep");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }

  // Build everything a run needs so errors surface before any work.
  try {
    const ProblemInstance instance = BuildInstance(cfg.instance);
    const LabelPolicy labels = ResolveLabelPolicy(cfg.labels, instance);
    Nature nature(instance, cfg.contexts, labels, 0);
    if (cfg.diagnostics) {
      Require(instance.actions().binary(),
              "diagnostics need a binary action set");
    }
    if (cfg.params.batch_learner == "constant") {
      instance.CheckLabel(ActionLabel{cfg.params.constant_label});
    }
    if (cfg.algorithm == Algorithm::kFtplSmooth) {
      FtplConfig f;
      f.eta = ResolveEta(cfg);
      f.n = ResolveN(cfg);
      f.M = cfg.params.M;
      ValidateFtplConfig(f);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path + " is not JSON: " + e.what());
  }
  return ParseConfig(doc);
}

json ConfigToJson(const ExperimentConfig& cfg) {
  json params = {{"M", cfg.params.M},
                 {"gamma", cfg.params.gamma},
                 {"C", cfg.params.C},
                 {"freeze_noise", cfg.params.freeze_noise},
                 {"batch_learner", cfg.params.batch_learner},
                 {"constant_label", cfg.params.constant_label}};
  params["eta"] = cfg.params.eta ? json(*cfg.params.eta) : json("theory");
  params["n"] = cfg.params.n ? json(*cfg.params.n) : json("auto");
  json doc = {{"instance", cfg.instance},
              {"algorithm", AlgorithmName(cfg.algorithm)},
              {"params", params},
              {"adversary",
               {{"contexts", ContextPolicyToJson(cfg.contexts)},
                {"labels", cfg.labels}}},
              {"horizon", cfg.horizon},
              {"seeds", cfg.seeds},
              {"output_dir", cfg.output_dir},
              {"run_id", cfg.run_id},
              {"diagnostics", cfg.diagnostics}};
  if (!cfg.sweep.is_null()) doc["sweep"] = cfg.sweep;
  return doc;
}

SeedReport RunSeed(const ExperimentConfig& cfg, const ProblemInstance& instance,
                   std::uint64_t seed, const RunOptions& options) {
  SeedReport report;
  RunSeedInto(cfg, instance, seed, options, &report);
  return report;
}

RunReport RunExperiment(const ExperimentConfig& cfg, const RunOptions& options) {
  const ProblemInstance instance = BuildInstance(cfg.instance);
  RunReport report;
  report.config = cfg;
  if (cfg.algorithm == Algorithm::kFtplSmooth) {
    report.eta = ResolveEta(cfg);
    report.n = ResolveN(cfg);
  }
  {
    Nature probe(instance, cfg.contexts, ResolveLabelPolicy(cfg.labels, instance),
                 0);
    for (Context x : probe.revealed().contexts) {
      report.transductive_set.push_back(x.index);
    }
  }

  const int num = static_cast<int>(cfg.seeds.size());
  report.seeds.resize(num);
  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, num));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < num; i = next.fetch_add(1)) {
      SeedReport& out = report.seeds[i];
      try {
        RunSeedInto(cfg, instance, cfg.seeds[i], options, &out);
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
        if (options.write_files) {
          try {
            std::filesystem::create_directories(cfg.output_dir);
            ExportRoundsCsv(out.trace, nullptr,
                            JoinPath(cfg.output_dir,
                                     out.run_id + "_partial_rounds.csv"));
          } catch (const std::exception&) {
          }
        }
      }
      if (!options.keep_traces) {
        out.trace.clear();
        out.trace.shrink_to_fit();
        out.diagnostics.clear();
        out.groups.clear();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  if (options.write_files) {
    std::filesystem::create_directories(cfg.output_dir);
    report.report_path = JoinPath(cfg.output_dir, cfg.run_id + "_report.json");
    std::ofstream out(report.report_path);
    if (!out) throw std::runtime_error("cannot write " + report.report_path);
    out << ReportToJson(report).dump(2) << "\n";
  }
  return report;
}

json ReportToJson(const RunReport& report) {
  const ExperimentConfig& cfg = report.config;
  json seeds = json::array();
  for (const SeedReport& s : report.seeds) {
    json e = {{"seed", s.seed},
              {"run_id", s.run_id},
              {"ok", s.ok},
              {"rounds", s.rounds},
              {"worst_group",
               {{"id", s.worst_group},
                {"group", s.worst_group_description},
                {"regret", s.worst_group_regret},
                {"T_g", s.worst_group_appearances}}},
              {"oracle_calls",
               {{"gh", s.gh_oracle_calls},
                {"h", s.h_oracle_calls},
                {"gh_per_round", s.expected_gh_calls_per_round},
                {"h_per_round", s.expected_h_calls_per_round}}},
              {"learner_group_list_accesses", s.learner_group_list_accesses},
              {"max_lp_value", s.rounds > 0 ? s.max_lp_value : 0.0},
              {"wall_time_s", s.wall_time_s},
              {"rounds_csv", s.rounds_csv},
              {"groups_csv", s.groups_csv}};
    if (cfg.diagnostics && s.rounds > 0) e["max_amf_value"] = s.max_amf_value;
    if (!s.ok) e["error"] = s.error;
    seeds.push_back(e);
  }
  json doc = {{"schema", "omgl run report v1"},
              {"config", ConfigToJson(cfg)},
              {"transductive_set", report.transductive_set},
              {"oracle_alpha", 0.0},
              {"alpha_T_term", "alpha * T = 0 (exact enumeration oracles)"},
              {"seeds", seeds}};
  if (cfg.algorithm == Algorithm::kFtplSmooth) {
    json desk = {{"eta", report.eta}, {"n", report.n}, {"M", cfg.params.M}};
    if (cfg.horizon >= 2) {
      ProblemInstance instance = BuildInstance(cfg.instance);
      const SmoothTheoryParameters t = TheoryParameters(
          cfg.horizon, cfg.contexts.sigma, instance.actions().size());
      doc["theory_parameters"] = {
          {"delta", t.delta}, {"M", t.M}, {"n", t.n}, {"eta", t.eta}};
      doc["desk_vs_theory"] = {
          {"desk", desk},
          {"M_ratio", cfg.params.M / t.M},
          {"n_ratio", report.n / t.n},
          {"note", "desk-scale M and n are below the advisory values"}};
    } else {
      doc["desk_vs_theory"] = {{"desk", desk}};
    }
  }
  return doc;
}

std::vector<SweepCell> ExpandSweep(const json& base_doc) {
  Require(base_doc.contains("sweep") && base_doc.at("sweep").is_object() &&
              !base_doc.at("sweep").empty(),
          "sweep grid is empty");
  const json& grid = base_doc.at("sweep");
  std::vector<std::pair<std::string, std::vector<json>>> axes;
  for (auto it = grid.begin(); it != grid.end(); ++it) {
    Require(it.value().is_array() && !it.value().empty(),
            "sweep axis '" + it.key() + "' is empty");
    try {
      (void)json::json_pointer(it.key());
    } catch (const json::exception& e) {
      throw std::invalid_argument("sweep axis '" + it.key() +
                                  "' is not a JSON pointer");
    }
    axes.push_back({it.key(), it.value().get<std::vector<json>>()});
  }
  json base = base_doc;
  base.erase("sweep");
  const std::string run_id = base.value("run_id", std::string("run"));

  std::vector<SweepCell> cells;
  std::vector<size_t> idx(axes.size(), 0);
  for (int cell = 0;; ++cell) {
    SweepCell c;
    c.doc = base;
    c.assignment = json::object();
    for (size_t a = 0; a < axes.size(); ++a) {
      const json& v = axes[a].second[idx[a]];
      c.doc[json::json_pointer(axes[a].first)] = v;
      c.assignment[axes[a].first] = v;
    }
    c.doc["run_id"] = run_id + "_cell" + std::to_string(cell);
    cells.push_back(std::move(c));
    int a = static_cast<int>(axes.size()) - 1;
    while (a >= 0 && ++idx[a] == axes[a].second.size()) {
      idx[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return cells;
}

SweepReport Sweep(const json& base_doc, const RunOptions& options) {
  SweepReport report;
  report.cells = ExpandSweep(base_doc);
  std::vector<std::string> axis_names;
  for (auto it = base_doc.at("sweep").begin(); it != base_doc.at("sweep").end();
       ++it) {
    axis_names.push_back(it.key());
  }
  for (const SweepCell& cell : report.cells) {
    try {
      report.runs.push_back(RunExperiment(ParseConfig(cell.doc), options));
      report.errors.push_back("");
    } catch (const std::exception& e) {
      report.runs.push_back(RunReport{});
      report.errors.push_back(e.what());
    }
  }

  const std::string out_dir = base_doc.value("output_dir", std::string("."));
  const std::string run_id = base_doc.value("run_id", std::string("run"));
  auto axis_values = [&](const SweepCell& c) {
    std::string s;
    for (const std::string& a : axis_names) s += "," + Quote(c.assignment[a].dump());
    return s;
  };
  std::string header_axes;
  for (const std::string& a : axis_names) header_axes += "," + a;

  // Per seed and cell: the regret-vs-T table.
  std::string rows = "# omgl sweep summary v1\ncell" + header_axes +
                     ",seed,T,worst_group,worst_group_regret,worst_group_T_g,"
                     "sqrt_T,status\n";
  // Per cell: the mean over seeds.
  std::string cells = "# omgl sweep cells v1\ncell" + header_axes +
                        ",T,seeds,mean_worst_group_regret,sqrt_T,status\n";
  for (size_t i = 0; i < report.cells.size(); ++i) {
    const SweepCell& cell = report.cells[i];
    const std::string prefix = std::to_string(i) + axis_values(cell);
    if (!report.errors[i].empty()) {
      const std::string& msg = report.errors[i];
      rows += prefix + ",,,,,,," + Quote("error: " + msg) + "\n";
      cells += prefix + ",,,,," + Quote("error: " + msg) + "\n";
      continue;
    }
    const RunReport& run = report.runs[i];
    const int T = run.config.horizon;
    double total = 0.0;
    int ok = 0;
    for (const SeedReport& s : run.seeds) {
      const std::string status = s.ok ? "ok" : "error: " + s.error;
      rows += prefix + "," + std::to_string(s.seed) + "," + std::to_string(T) +
              "," + std::to_string(s.worst_group) + "," +
              Num(s.worst_group_regret) + "," +
              std::to_string(s.worst_group_appearances) + "," +
              Num(std::sqrt(static_cast<double>(T))) + "," + Quote(status) + "\n";
      if (s.ok) {
        total += s.worst_group_regret;
        ++ok;
      }
    }
    cells += prefix + "," + std::to_string(T) + "," + std::to_string(ok) + "," +
               (ok > 0 ? Num(total / ok) : std::string("")) + "," +
               Num(std::sqrt(static_cast<double>(T))) + "," +
               (ok == static_cast<int>(run.seeds.size()) ? "ok" : "partial") +
               "\n";
  }
  if (options.write_files) {
    std::filesystem::create_directories(out_dir);
    report.summary_csv = JoinPath(out_dir, run_id + "_summary.csv");
    report.cells_csv = JoinPath(out_dir, run_id + "_sweep.csv");
    std::ofstream(report.summary_csv) << rows;
    std::ofstream(report.cells_csv) << cells;
  }
  return report;
}

}  // namespace omgl
