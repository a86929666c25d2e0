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

#ifndef HYPERFLOW_UNCERTAINTY_H_
#define HYPERFLOW_UNCERTAINTY_H_

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/abstract_hmm.h"
#include "hyperflow/dist.h"
#include "hyperflow/hyper.h"
#include "hyperflow/matrix.h"
#include "hyperflow/rational.h"

namespace hyperflow {

// Nonnegative cost table l.i.x over a finite index set I and a state space.
class LossFunction {
 public:
  // Errors: DimensionMismatch, BadProbability (negative entry),
  // InvalidArgument (empty or duplicate indices).
  static absl::StatusOr<LossFunction> Create(
      SpacePtr space, std::vector<std::string> indices,
      std::vector<std::vector<Rat>> table, std::string name = "");

  const SpacePtr& space() const { return space_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& indices() const { return indices_; }
  const std::vector<std::vector<Rat>>& table() const { return table_; }
  const std::vector<Rat>& row(size_t i) const { return table_[i]; }
  size_t size() const { return indices_.size(); }

 private:
  LossFunction(SpacePtr space, std::vector<std::string> indices,
               std::vector<std::vector<Rat>> table, std::string name)
      : space_(std::move(space)),
        indices_(std::move(indices)),
        table_(std::move(table)),
        name_(std::move(name)) {}

  SpacePtr space_;
  std::vector<std::string> indices_;
  std::vector<std::vector<Rat>> table_;
  std::string name_;
};

// U_l.rho = min_i sum_x rho.x * l.i.x. Errors: SpaceMismatch.
absl::StatusOr<Rat> EvalLossMeasure(const LossFunction& l, const Dist& rho);

double ShannonEntropy(const Dist& rho);
Rat BayesVulnerability(const Dist& rho);
// sum_k k * p_(k) with probabilities sorted in descending order, k from 1.
Rat GuessingEntropy(const Dist& rho);

class UncertaintyMeasure {
 public:
  // kBayesComplement is 1 - max_x rho.x, the uncertainty dual of Bayes
  // vulnerability.
  enum class Kind { kLoss, kShannon, kBayesComplement, kGuessing };

  static UncertaintyMeasure Loss(LossFunction l);
  static UncertaintyMeasure Shannon();
  static UncertaintyMeasure BayesComplement();
  static UncertaintyMeasure Guessing();

  Kind kind() const { return kind_; }
  const LossFunction& loss() const { return *loss_; }
  bool exact() const { return kind_ != Kind::kShannon; }
  std::string name() const;

  // Errors: Unimplemented for Shannon, SpaceMismatch for loss-based.
  absl::StatusOr<Rat> Exact(const Dist& rho) const;
  absl::StatusOr<double> Approx(const Dist& rho) const;

 private:
  explicit UncertaintyMeasure(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::optional<LossFunction> loss_;
};

// wp.h.u.pi = E_{h.pi} u. Errors: SpaceMismatch; Unimplemented for Shannon.
absl::StatusOr<Rat> Wp(const AbstractHmm& h, const UncertaintyMeasure& u,
                       const Dist& prior);
absl::StatusOr<double> WpApprox(const AbstractHmm& h,
                                const UncertaintyMeasure& u, const Dist& prior);

// Pre-loss of a tensor: indices are strategies sigma: Y -> I with
// l'.sigma.x = sum_{y,x'} H[x][y][x'] * l.(sigma y).x'. Dominated strategies
// are pruned. Errors: SpaceMismatch.
absl::StatusOr<LossFunction> WpLossTensor(const HmmTensor& h,
                                          const LossFunction& l);
// Same, materializing h first. Errors: NotMaterialized.
absl::StatusOr<LossFunction> WpLoss(const AbstractHmm& h, const LossFunction& l,
                                    size_t bound = kDefaultMaterializeBound);

struct TrialReport {
  int trials = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

// wp(h1;h2).u.pi == wp.h1.(wp.h2.u).pi for one (l, pi), using wp_loss when h2
// is materializable and nested expectation otherwise.
absl::StatusOr<bool> TransformerComposeAt(const AbstractHmm& h1,
                                          const AbstractHmm& h2,
                                          const LossFunction& l,
                                          const Dist& prior);
absl::StatusOr<TrialReport> TransformerComposeCheck(const AbstractHmm& h1,
                                                    const AbstractHmm& h2,
                                                    int trials,
                                                    std::mt19937_64& rng);

struct LeakageReport {
  double prior = 0;
  double posterior = 0;
  double leak = 0;
  // Set for exact measures.
  std::optional<Rat> prior_exact;
  std::optional<Rat> posterior_exact;
  std::optional<Rat> leak_exact;
};

// prior_u = u.pi, posterior_u = E_{h.pi} u, leak = prior_u - posterior_u.
absl::StatusOr<LeakageReport> Leakage(const AbstractHmm& h, const Dist& prior,
                                      const UncertaintyMeasure& u);

// (pi > l).i.x = l.i.x * pi.x. Errors: SpaceMismatch.
absl::StatusOr<LossFunction> SkewedLoss(const Dist& prior,
                                        const LossFunction& l);

// Loss for a*U_l1 + b*U_l2: index pairs (i, j) with a*l1.i + b*l2.j.
// Errors: SpaceMismatch, BadProbability for negative coefficients.
absl::StatusOr<LossFunction> CombineLoss(const Rat& a, const LossFunction& l1,
                                         const Rat& b, const LossFunction& l2);

// Single-index loss with every entry equal to `value`.
LossFunction ConstantLoss(const SpacePtr& space, const Rat& value);

// wp.h.(U_{pi1 > l}).pi2 == wp.h.(U_{pi2 > l}).pi1.
absl::StatusOr<bool> MultiplicativeAt(const AbstractHmm& h, const Dist& pi1,
                                      const Dist& pi2, const LossFunction& l);
absl::StatusOr<TrialReport> IsMultiplicative(const AbstractHmm& h, int trials,
                                             std::mt19937_64& rng);

}  // namespace hyperflow

#endif  // HYPERFLOW_UNCERTAINTY_H_
