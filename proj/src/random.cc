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

#include "hyperflow/random.h"

#include <cstdlib>
#include <string>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace hyperflow {
namespace {

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Nonnegative integer weights with at least one positive entry.
std::vector<long> Weights(std::mt19937_64& rng, size_t n, int max_weight) {
  std::vector<long> w(n);
  long total = 0;
  for (auto& v : w) {
    v = Uniform(rng, 0, max_weight);
    total += v;
  }
  if (total == 0) w[Uniform(rng, 0, static_cast<int>(n) - 1)] = 1;
  return w;
}

std::vector<Rat> NormalizedRow(std::mt19937_64& rng, size_t n, int max_weight) {
  std::vector<long> w = Weights(rng, n, max_weight);
  long total = 0;
  for (long v : w) total += v;
  std::vector<Rat> row;
  row.reserve(n);
  for (long v : w) row.emplace_back(Rat(v, total));
  for (auto& r : row) r.canonicalize();
  return row;
}

}  // namespace

uint64_t SeedFromEnv(uint64_t fallback) {
  const char* env = std::getenv("HYPERFLOW_SEED");
  uint64_t seed;
  if (env != nullptr && absl::SimpleAtoi(env, &seed)) return seed;
  return fallback;
}

Rat RandomProbability(std::mt19937_64& rng) {
  const int den = Uniform(rng, 1, 8);
  Rat p(Uniform(rng, 0, den), den);
  p.canonicalize();
  return p;
}

Dist RandomDist(std::mt19937_64& rng, const SpacePtr& space, int max_weight) {
  return Dist::FromDense(space, NormalizedRow(rng, space->size(), max_weight))
      .value();
}

ChannelMatrix RandomChannel(std::mt19937_64& rng, const SpacePtr& space,
                            size_t num_obs, int max_weight) {
  std::vector<ObsLabel> cols;
  for (size_t y = 0; y < num_obs; ++y) cols.emplace_back(absl::StrCat("y", y));
  std::vector<std::vector<Rat>> rows;
  for (size_t x = 0; x < space->size(); ++x) {
    rows.push_back(NormalizedRow(rng, num_obs, max_weight));
  }
  return ChannelMatrix::Create(space, std::move(cols), rows).value();
}

MarkovMatrix RandomMarkov(std::mt19937_64& rng, const SpacePtr& space,
                          int max_weight) {
  std::vector<std::vector<Rat>> rows;
  for (size_t x = 0; x < space->size(); ++x) {
    rows.push_back(NormalizedRow(rng, space->size(), max_weight));
  }
  return MarkovMatrix::Create(space, rows).value();
}

HmmTensor RandomTensor(std::mt19937_64& rng, const SpacePtr& space,
                       size_t num_obs, int max_weight) {
  const size_t n = space->size();
  std::vector<ObsLabel> obs;
  for (size_t y = 0; y < num_obs; ++y) obs.emplace_back(absl::StrCat("o", y));
  std::vector<Rat> flat;
  for (size_t x = 0; x < n; ++x) {
    std::vector<Rat> row = NormalizedRow(rng, num_obs * n, max_weight);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return HmmTensor::CreateFlat(space, std::move(obs), std::move(flat)).value();
}

LossFunction RandomLoss(std::mt19937_64& rng, const SpacePtr& space,
                        size_t num_indices, int max_value) {
  const int den = Uniform(rng, 1, 3);
  std::vector<std::string> indices;
  std::vector<std::vector<Rat>> table;
  for (size_t i = 0; i < num_indices; ++i) {
    indices.push_back(absl::StrCat("i", i));
    std::vector<Rat> row;
    for (size_t x = 0; x < space->size(); ++x) {
      Rat v(Uniform(rng, 0, max_value), den);
      v.canonicalize();
      row.push_back(std::move(v));
    }
    table.push_back(std::move(row));
  }
  return LossFunction::Create(space, std::move(indices), std::move(table))
      .value();
}

}  // namespace hyperflow
