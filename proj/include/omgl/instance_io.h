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

#ifndef OMGL_INSTANCE_IO_H_
#define OMGL_INSTANCE_IO_H_

#include <string>

#include "json.hpp"
#include "omgl/core.h"

namespace omgl {

// Instance description document:
//
//   {
//     "universe_size": 64,
//     "action_count": 2,
//     "hypotheses": [ {"kind": "threshold", "threshold": 3, "polarity": 1},
//                     {"kind": "table", "table": [1, -1, ...]} ]
//                   | {"family": "thresholds"},
//     "groups": [ {"kind": "interval", "lo": 0, "hi": 5},
//                 {"kind": "set", "members": [0, 4, 9]} ]
//               | {"family": "intervals"},
//     "loss": "zero-one" | [[l(y'_0, y_0), ...], ...],   // action-index order
//     "vc_hint": 2                                      // optional
//   }
//
// Binary action index order is (+1, -1). InstanceToJson always writes the
// explicit list form, so a written instance reloads to an identical one.
nlohmann::json InstanceToJson(const ProblemInstance& instance);
ProblemInstance InstanceFromJson(const nlohmann::json& doc);

ProblemInstance LoadInstance(const std::string& path);
void SaveInstance(const ProblemInstance& instance, const std::string& path);

nlohmann::json HypothesisToJson(const Hypothesis& h);
Hypothesis HypothesisFromJson(const nlohmann::json& doc);
nlohmann::json GroupToJson(const Group& g);
Group GroupFromJson(const nlohmann::json& doc);

}  // namespace omgl

#endif  // OMGL_INSTANCE_IO_H_
