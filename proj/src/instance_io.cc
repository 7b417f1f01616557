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

#include "omgl/instance_io.h"

#include <fstream>
#include <stdexcept>

namespace omgl {

using nlohmann::json;

json HypothesisToJson(const Hypothesis& h) {
  if (h.kind() == Hypothesis::Kind::kThreshold) {
    return {{"kind", "threshold"},
            {"threshold", h.threshold()},
            {"polarity", h.polarity()}};
  }
  json table = json::array();
  for (ActionLabel y : h.table()) table.push_back(y.value);
  return {{"kind", "table"}, {"table", table}};
}

Hypothesis HypothesisFromJson(const json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "threshold") {
    return Hypothesis::Threshold(doc.at("threshold").get<int>(),
                                 doc.value("polarity", 1));
  }
  if (kind == "table") {
    std::vector<ActionLabel> table;
    for (const json& v : doc.at("table")) table.push_back({v.get<int>()});
    return Hypothesis::Table(std::move(table));
  }
  throw std::invalid_argument("unknown hypothesis kind '" + kind + "'");
}

json GroupToJson(const Group& g) {
  if (g.kind() == Group::Kind::kInterval) {
    return {{"kind", "interval"}, {"lo", g.lo()}, {"hi", g.hi()}};
  }
  return {{"kind", "set"}, {"members", g.members()}};
}

Group GroupFromJson(const json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "interval") {
    return Group::Interval(doc.at("lo").get<int>(), doc.at("hi").get<int>());
  }
  if (kind == "set") {
    return Group::Set(doc.at("members").get<std::vector<int>>());
  }
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

json InstanceToJson(const ProblemInstance& instance) {
  json hs = json::array();
  for (const Hypothesis& h : instance.hypotheses()) {
    hs.push_back(HypothesisToJson(h));
  }
  json gs = json::array();
  {
    ScopedGroupAccess scope(GroupAccess::kEvaluation);
    for (const Group& g : instance.groups()) gs.push_back(GroupToJson(g));
  }
  return {{"universe_size", instance.universe_size()},
          {"action_count", instance.actions().size()},
          {"hypotheses", hs},
          {"groups", gs},
          {"loss", instance.loss().Rows()},
          {"vc_hint", instance.vc_hint()}};
}

ProblemInstance InstanceFromJson(const json& doc) {
  const int m = doc.at("universe_size").get<int>();
  const int k = doc.value("action_count", 2);
  ActionSet actions = ActionSet::MultiClass(k);

  std::vector<Hypothesis> hypotheses;
  const json& hdoc = doc.at("hypotheses");
  if (hdoc.is_object()) {
    const std::string family = hdoc.at("family").get<std::string>();
    if (family != "thresholds") {
      throw std::invalid_argument("unknown hypothesis family '" + family + "'");
    }
    hypotheses = AllThresholds(m);
  } else {
    for (const json& h : hdoc) hypotheses.push_back(HypothesisFromJson(h));
  }

  std::vector<Group> groups;
  const json& gdoc = doc.at("groups");
  if (gdoc.is_object()) {
    const std::string family = gdoc.at("family").get<std::string>();
    if (family != "intervals") {
      throw std::invalid_argument("unknown group family '" + family + "'");
    }
    groups = AllIntervals(m);
  } else {
    for (const json& g : gdoc) groups.push_back(GroupFromJson(g));
  }

  const json& ldoc = doc.contains("loss") ? doc.at("loss") : json("zero-one");
  LossTable loss = ldoc.is_string()
                       ? (ldoc.get<std::string>() == "zero-one"
                              ? LossTable::ZeroOne(k)
                              : throw std::invalid_argument(
                                    "unknown loss preset '" +
                                    ldoc.get<std::string>() + "'"))
                       : LossTable(ldoc.get<std::vector<std::vector<double>>>());

  return ProblemInstance(m, std::move(actions), std::move(hypotheses),
                         std::move(groups), std::move(loss),
                         doc.value("vc_hint", 0));
}

ProblemInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return InstanceFromJson(json::parse(in));
}

void SaveInstance(const ProblemInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << InstanceToJson(instance).dump(2) << "\n";
}

}  // namespace omgl
