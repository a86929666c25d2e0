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

#include <vector>

#include "hyperflow/hyper.h"
#include "hyperflow/lp.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

absl::StatusOr<Rat> KantorovichHyper(const Hyper& a, const Hyper& b) {
  if (!SameSpace(a.space(), b.space())) {
    return SpaceMismatchError("distance between hypers over different spaces");
  }
  const size_t m = a.size();
  const size_t n = b.size();
  // Transport plan t[i][j] >= 0 with row sums = outer of a, column sums =
  // outer of b.
  RatMatrix cons(m + n, std::vector<Rat>(m * n, Rat(0)));
  std::vector<Rat> rhs(m + n);
  std::vector<Rat> cost(m * n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      cons[i][i * n + j] = 1;
      cons[m + j][i * n + j] = 1;
      ASSIGN_OR_RETURN(cost[i * n + j],
                       KantorovichDist(a.atoms()[i].first, b.atoms()[j].first));
    }
    rhs[i] = a.atoms()[i].second;
  }
  for (size_t j = 0; j < n; ++j) rhs[m + j] = b.atoms()[j].second;
  ASSIGN_OR_RETURN(LpOptimum opt, LpMinimize(cons, rhs, cost));
  return opt.value;
}

}  // namespace hyperflow
