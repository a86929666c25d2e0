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

#include "hyperflow/builtins.h"

#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hyperflow {

Environment GenericBuiltins(const SpacePtr& space) {
  Environment env;
  env.space = space;
  env.channels.emplace("null", ChannelMatrix::Null(space));
  env.markovs.emplace("id", MarkovMatrix::Identity(space));
  env.priors.emplace("uniform", Dist::Uniform(space));
  return env;
}

absl::StatusOr<Environment> BuiltinMatrices(int width, int max_width) {
  if (width < 1 || width > max_width) {
    return absl::InvalidArgumentError(absl::StrCat(
        "UnsupportedWidth: ", width, " bits (supported 1..", max_width, ")"));
  }
  SpacePtr space = StateSpace::Bits(width);
  Environment env = GenericBuiltins(space);
  const size_t n = space->size();

  std::vector<Rat> one_bit;
  one_bit.reserve(2 * n);
  for (size_t x = 0; x < n; ++x) {
    const std::string& label = space->label(x);
    int ones = 0;
    for (char c : label) ones += c == '1';
    one_bit.push_back(Rat(width - ones, width));
    one_bit.push_back(Rat(ones, width));
  }
  for (Rat& r : one_bit) r.canonicalize();
  absl::StatusOr<ChannelMatrix> c = ChannelMatrix::CreateFlat(
      space, {ObsLabel("0"), ObsLabel("1")}, std::move(one_bit));
  if (!c.ok()) return c.status();
  env.channels.emplace("oneBit", *std::move(c));

  // Complementing every bit maps index v to n-1-v.
  std::vector<Rat> invert(n * n);
  for (size_t x = 0; x < n; ++x) {
    invert[x * n + x] += Rat(1, 2);
    invert[x * n + (n - 1 - x)] += Rat(1, 2);
  }
  absl::StatusOr<MarkovMatrix> m = MarkovMatrix::CreateFlat(space, invert);
  if (!m.ok()) return m.status();
  env.markovs.emplace("invert", *std::move(m));

  std::vector<Dist::Entry> skewed;
  for (size_t x = 1; x < n; ++x) skewed.emplace_back(x, Rat(1, n - 1));
  env.priors.emplace("skewed", Dist::Unchecked(space, std::move(skewed)));
  return env;
}

}  // namespace hyperflow
