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

#ifndef HYPERFLOW_BUILTINS_H_
#define HYPERFLOW_BUILTINS_H_

#include <map>
#include <string>

#include "absl/status/statusor.h"
#include "hyperflow/dist.h"
#include "hyperflow/matrix.h"
#include "hyperflow/state_space.h"

namespace hyperflow {

inline constexpr int kMaxBuiltinWidth = 8;

// Named channels, markovs and priors visible to a program.
struct Environment {
  SpacePtr space;
  std::map<std::string, ChannelMatrix> channels;
  std::map<std::string, MarkovMatrix> markovs;
  std::map<std::string, Dist> priors;
};

// Definitions available on any state space: channel `null`, markov `id`,
// prior `uniform`.
Environment GenericBuiltins(const SpacePtr& space);

// Bit-vector state of `width` bits. Adds channel `oneBit` (reveals one bit
// position chosen uniformly), markov `invert` (complements every bit with
// probability 1/2) and prior `skewed` (uniform except on all-zeros).
// Errors with "UnsupportedWidth" outside 1..max_width.
absl::StatusOr<Environment> BuiltinMatrices(int width,
                                            int max_width = kMaxBuiltinWidth);

}  // namespace hyperflow

#endif  // HYPERFLOW_BUILTINS_H_
