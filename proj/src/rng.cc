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

#include "omgl/rng.h"

#include <cmath>

namespace omgl {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamSeed(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                         std::uint64_t b) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(tag));
  h = SplitMix64(h ^ a);
  return SplitMix64(h ^ b);
}

double StandardGaussian(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double Uniform01(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double UnitLaplace(Rng& rng) {
  // u in (-1/2, 1/2); x = -sign(u) * log(1 - 2|u|).
  double u = Uniform01(rng) - 0.5;
  while (u == -0.5) u = Uniform01(rng) - 0.5;
  const double s = u < 0 ? -1.0 : 1.0;
  return -s * std::log1p(-2.0 * std::abs(u));
}

int UniformIndex(Rng& rng, int n) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(rng);
}

}  // namespace omgl
