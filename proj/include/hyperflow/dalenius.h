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

#ifndef HYPERFLOW_DALENIUS_H_
#define HYPERFLOW_DALENIUS_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/abstract_hmm.h"
#include "hyperflow/dist.h"
#include "hyperflow/hyper.h"
#include "hyperflow/matrix.h"

namespace hyperflow {

// X x Z with labels "x,z", x-major.
SpacePtr ProductSpace(const SpacePtr& x, const SpacePtr& z);

// (C x Z)[(x,z)][y] = C[x][y].
ChannelMatrix ExtendChannel(const ChannelMatrix& c, const SpacePtr& z);
// (M x Z)[(x,z)][(x',z')] = M[x][x'] if z = z', else 0.
MarkovMatrix ExtendMarkov(const MarkovMatrix& m, const SpacePtr& z);
HmmTensor ExtendTensor(const HmmTensor& h, const SpacePtr& z);
// Extends every leaf of a composition tree. Errors: InvalidArgument for
// opaque function leaves.
absl::StatusOr<AbstractHmm> ExtendHmm(const AbstractHmm& h, const SpacePtr& z);

// Marginals of a distribution over ProductSpace(x, z).
Dist MarginalX(const Dist& d, const SpacePtr& x, const SpacePtr& z);
Dist MarginalZ(const Dist& d, const SpacePtr& x, const SpacePtr& z);
// Push-forward of the inner marginals.
Hyper ProjectX(const Hyper& h, const SpacePtr& x, const SpacePtr& z);
Hyper ProjectZ(const Hyper& h, const SpacePtr& x, const SpacePtr& z);

// The product of two independent marginals, over ProductSpace(x, z).
Dist IndependentPrior(const Dist& px, const Dist& pz);

struct ObservationPosterior {
  ObsLabel observation;
  Rat probability;
  Dist z_posterior;
};

struct DaleniusResult {
  Hyper product;
  Hyper z_hyper;
  Hyper x_hyper;
  // Per-observation Z posteriors; empty when the program does not
  // materialize.
  std::vector<ObservationPosterior> by_observation;
};

// Evaluates (C x Z) > (M x Z) at the correlated prior.
// Errors: SpaceMismatch.
absl::StatusOr<DaleniusResult> DaleniusAnalysis(const ChannelMatrix& c,
                                                const MarkovMatrix& m,
                                                const SpacePtr& z,
                                                const Dist& correlated);
// Same for a whole program over X.
absl::StatusOr<DaleniusResult> DaleniusAnalysis(const AbstractHmm& h,
                                                const SpacePtr& z,
                                                const Dist& correlated);

}  // namespace hyperflow

#endif  // HYPERFLOW_DALENIUS_H_
