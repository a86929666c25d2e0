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

#ifndef HYPERFLOW_FORMATS_H_
#define HYPERFLOW_FORMATS_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hyperflow/dist.h"
#include "hyperflow/hyper.h"
#include "hyperflow/refinement.h"
#include "hyperflow/state_space.h"
#include "hyperflow/uncertainty.h"

namespace hyperflow {

struct NumberFormat {
  bool decimal = false;
  int digits = 4;
};

std::string FormatNumber(const Rat& r, const NumberFormat& format);

// One line per support state: "label inner [outer]", the outer printed on the
// first line of each inner. Inners are separated by a blank line and appear
// in canonical order.
std::string RenderHyper(const Hyper& h, const NumberFormat& format = {});

// [{"outer": "p/q", "inner": {"label": "p/q", ...}}, ...] in canonical
// order; values are always exact fractions.
std::string RenderHyperJson(const Hyper& h);

// "label value" per support state.
std::string RenderDist(const Dist& d, const NumberFormat& format = {});

// Loss file:
//   loss <name>
//   <index>: v_1 ... v_n      (one value per state, in state order)
// Blank lines and '#' comments are ignored.
absl::StatusOr<LossFunction> ParseLossFile(absl::string_view text,
                                           const SpacePtr& space);
std::string WriteLossFile(const LossFunction& l);

// Correlated prior on X x Z, one "x,z: p" entry per line. Z's labels are
// taken in order of first appearance.
struct CorrelatedPrior {
  SpacePtr z;
  Dist joint;  // over ProductSpace(x, z)
};
absl::StatusOr<CorrelatedPrior> ParseCorrelatedPrior(absl::string_view text,
                                                     const SpacePtr& x);

// Refinement matrix as text: a header naming the inners of both hypers, then
// one row of R per inner of the specification.
std::string WriteRefinementMatrix(const RefinementMatrix& r);

}  // namespace hyperflow

#endif  // HYPERFLOW_FORMATS_H_
