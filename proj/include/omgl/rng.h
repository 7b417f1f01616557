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

#ifndef OMGL_RNG_H_
#define OMGL_RNG_H_

#include <cstdint>
#include <random>

namespace omgl {

using Rng = std::mt19937_64;

// Stream tags. Every random consumer draws from its own stream so adding
// draws in one place never shifts another.
enum class StreamTag : std::uint64_t {
  kContext = 1,
  kLabel = 2,
  kHallucination = 3,
  kAction = 4,
  kLaplace = 5,
  kTransductive = 6,
  kTest = 7,
};

std::uint64_t SplitMix64(std::uint64_t x);

// Seed for the stream identified by (seed, tag, a, b).
std::uint64_t StreamSeed(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                         std::uint64_t b = 0);

inline Rng MakeStream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                      std::uint64_t b = 0) {
  return Rng(StreamSeed(seed, tag, a, b));
}

double StandardGaussian(Rng& rng);
// Unit Laplace (scale 1) by inverse CDF.
double UnitLaplace(Rng& rng);
double Uniform01(Rng& rng);
int UniformIndex(Rng& rng, int n);

}  // namespace omgl

#endif  // OMGL_RNG_H_
