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

#ifndef HYPERFLOW_LP_H_
#define HYPERFLOW_LP_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/rational.h"

namespace hyperflow {

using RatMatrix = std::vector<std::vector<Rat>>;

// Outcome of deciding A v = b, v >= 0. Exactly one of `solution` (a basic
// feasible point) and `certificate` (c with c^T A >= 0 and c^T b < 0) is set.
struct LpFeasibility {
  std::optional<std::vector<Rat>> solution;
  std::optional<std::vector<Rat>> certificate;

  bool feasible() const { return solution.has_value(); }
};

// Exact Phase-I simplex with Bland's rule. Errors: DimensionMismatch.
absl::StatusOr<LpFeasibility> LpFeasible(const RatMatrix& a,
                                         const std::vector<Rat>& b);

struct LpOptimum {
  std::vector<Rat> solution;
  Rat value;
};

// min c^T v subject to A v = b, v >= 0. Errors: DimensionMismatch,
// InvalidArgument if the system is infeasible, OutOfRange if unbounded.
absl::StatusOr<LpOptimum> LpMinimize(const RatMatrix& a,
                                     const std::vector<Rat>& b,
                                     const std::vector<Rat>& c);

// True when c^T A >= 0 componentwise and c^T b < 0.
bool IsFarkasCertificate(const RatMatrix& a, const std::vector<Rat>& b,
                         const std::vector<Rat>& c);

}  // namespace hyperflow

#endif  // HYPERFLOW_LP_H_
