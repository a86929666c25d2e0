// Copyright 2026 The Hyperflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERFLOW_RANDOM_H_
#define HYPERFLOW_RANDOM_H_

#include <cstdint>
#include <random>

#include "hyperflow/dist.h"
#include "hyperflow/matrix.h"
#include "hyperflow/rational.h"
#include "hyperflow/uncertainty.h"

namespace hyperflow {

// Generators of small random rational objects for trial-based checks.
// Entries use small integer weights so that exact arithmetic stays cheap.

// Reads HYPERFLOW_SEED, falling back to `fallback`.
uint64_t SeedFromEnv(uint64_t fallback);

// p in [0, 1] with denominator at most 8.
Rat RandomProbability(std::mt19937_64& rng);

// Integer weights in [0, max_weight], normalized; zero entries allowed but
// never all zero.
Dist RandomDist(std::mt19937_64& rng, const SpacePtr& space,
                int max_weight = 4);

ChannelMatrix RandomChannel(std::mt19937_64& rng, const SpacePtr& space,
                            size_t num_obs, int max_weight = 3);
MarkovMatrix RandomMarkov(std::mt19937_64& rng, const SpacePtr& space,
                          int max_weight = 3);
HmmTensor RandomTensor(std::mt19937_64& rng, const SpacePtr& space,
                       size_t num_obs, int max_weight = 3);
// Entries are integers in [0, max_value] divided by a small denominator.
LossFunction RandomLoss(std::mt19937_64& rng, const SpacePtr& space,
                        size_t num_indices, int max_value = 4);

}  // namespace hyperflow

#endif  // HYPERFLOW_RANDOM_H_
