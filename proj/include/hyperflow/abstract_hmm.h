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

#ifndef HYPERFLOW_ABSTRACT_HMM_H_
#define HYPERFLOW_ABSTRACT_HMM_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/dist.h"
#include "hyperflow/hyper.h"
#include "hyperflow/matrix.h"

namespace hyperflow {

inline constexpr size_t kDefaultMaterializeBound = 4096;

// A function from priors to hypers over one state space. Leaves are matrix
// denotations (or an opaque function); interior nodes are Kleisli
// compositions, evaluated lazily per prior.
class AbstractHmm {
 public:
  enum class Kind { kChannel, kMarkov, kStep, kTensor, kFunction, kSeq };
  using Fn = std::function<absl::StatusOr<Hyper>(const Dist&)>;

  Kind kind() const;
  const SpacePtr& space() const;

  // Errors: SpaceMismatch when the prior lives elsewhere.
  absl::StatusOr<Hyper> Evaluate(const Dist& prior) const;

  // Leaf and child accessors; only valid for the matching kind.
  const ChannelMatrix& channel() const;
  const MarkovMatrix& markov() const;
  const HmmTensor& tensor() const;
  const AbstractHmm& first() const;
  const AbstractHmm& second() const;

  // Observation count of the materialized tensor, or nullopt for opaque
  // functions. Saturates at SIZE_MAX.
  std::optional<size_t> ObservationCount() const;

  // An opaque Dist -> Hyper map, for constructions that are not matrix
  // denotations.
  static AbstractHmm FromFunction(SpacePtr space, Fn fn);

 private:
  struct Node;
  explicit AbstractHmm(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend AbstractHmm DenoteChannel(const ChannelMatrix& c);
  friend AbstractHmm DenoteMarkov(const MarkovMatrix& m);
  friend AbstractHmm DenoteHmm(const HmmTensor& h);
  friend absl::StatusOr<AbstractHmm> DenoteStep(const ChannelMatrix& c,
                                                const MarkovMatrix& m);
  friend absl::StatusOr<AbstractHmm> KleisliCompose(const AbstractHmm& h1,
                                                    const AbstractHmm& h2);
};

// [[J]]: the sum of the sub-point hypers of J's columns. Errors: NotAJoint.
absl::StatusOr<Hyper> AbstractJoint(const JointMatrix& j);

AbstractHmm DenoteChannel(const ChannelMatrix& c);
AbstractHmm DenoteMarkov(const MarkovMatrix& m);
AbstractHmm DenoteHmm(const HmmTensor& h);
// [[C > M]] kept in factored form. Errors: SpaceMismatch.
absl::StatusOr<AbstractHmm> DenoteStep(const ChannelMatrix& c,
                                       const MarkovMatrix& m);
// The identity program, [[ID]] as a markov.
AbstractHmm IdentityHmm(const SpacePtr& space);

// (h1;h2).pi = Avg.(D h2 . (h1.pi)). Errors: SpaceMismatch.
absl::StatusOr<AbstractHmm> KleisliCompose(const AbstractHmm& h1,
                                           const AbstractHmm& h2);

// Single tensor equal to the composition tree. Errors: NotMaterialized when
// the observation product exceeds `bound` or the tree has opaque leaves.
absl::StatusOr<HmmTensor> Materialize(const AbstractHmm& h,
                                      size_t bound = kDefaultMaterializeBound);

// True when both evaluate to equal hypers at every prior.
absl::StatusOr<bool> AgreeOn(const AbstractHmm& h1, const AbstractHmm& h2,
                             const std::vector<Dist>& priors);

struct SuperLinearFailure {
  Dist prior1;
  Dist prior2;
  Rat p;
};

struct SuperLinearReport {
  int trials = 0;
  std::vector<SuperLinearFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Checks [[h]].pi1 p(+) [[h]].pi2 refines-to [[h]].(pi1 p(+) pi2) with the
// exact LP on `trials` random triples.
absl::StatusOr<SuperLinearReport> CheckSuperLinear(const AbstractHmm& h,
                                                   int trials,
                                                   std::mt19937_64& rng);

// One triple of the check above.
absl::StatusOr<bool> SuperLinearAt(const AbstractHmm& h, const Dist& pi1,
                                   const Dist& pi2, const Rat& p);

}  // namespace hyperflow

#endif  // HYPERFLOW_ABSTRACT_HMM_H_
