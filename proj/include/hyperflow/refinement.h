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

#ifndef HYPERFLOW_REFINEMENT_H_
#define HYPERFLOW_REFINEMENT_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/hyper.h"
#include "hyperflow/matrix.h"
#include "hyperflow/uncertainty.h"

namespace hyperflow {

// Stochastic matrix from the inners of Delta_S (rows) to the inners of
// Delta_I (columns).
class RefinementMatrix {
 public:
  // Errors: DimensionMismatch, NotStochastic.
  static absl::StatusOr<RefinementMatrix> Create(
      std::vector<Dist> rows, std::vector<Dist> cols,
      std::vector<std::vector<Rat>> entries);

  const std::vector<Dist>& rows() const { return rows_; }
  const std::vector<Dist>& cols() const { return cols_; }
  const std::vector<std::vector<Rat>>& entries() const { return entries_; }
  const Rat& at(size_t s, size_t i) const { return entries_[s][i]; }

  friend bool operator==(const RefinementMatrix& a, const RefinementMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  RefinementMatrix(std::vector<Dist> rows, std::vector<Dist> cols,
                   std::vector<std::vector<Rat>> entries)
      : rows_(std::move(rows)),
        cols_(std::move(cols)),
        entries_(std::move(entries)) {}

  std::vector<Dist> rows_;
  std::vector<Dist> cols_;
  std::vector<std::vector<Rat>> entries_;
};

struct RefinementResult {
  enum class Verdict { kRefines, kNotRefines };

  Verdict verdict;
  std::optional<RefinementMatrix> matrix;
  std::optional<HyperWitness> witness;
  // Set on kNotRefines: E_{Delta_S} U_l > E_{Delta_I} U_l.
  std::optional<LossFunction> separator;

  bool refines() const { return verdict == Verdict::kRefines; }
};

// One column per inner (in canonical order), scaled by its outer weight.
// Column labels are "c0", "c1", ...
JointMatrix HyperToJoint(const Hyper& h);

// Decides Delta_S refined-by Delta_I by exact LP feasibility of
// J_S . R = J_I. Errors: SpaceMismatch.
absl::StatusOr<RefinementResult> CheckRefinement(const Hyper& spec,
                                                 const Hyper& impl);

// True when J_S . R = J_I holds exactly. Errors: IndexMismatch.
absl::StatusOr<bool> VerifyRefinementMatrix(const Hyper& spec,
                                            const Hyper& impl,
                                            const RefinementMatrix& r);

// Delta-bar := [[Delta_S > R]], each column becoming a hyper over the inners
// of Delta_S. Errors: IndexMismatch.
absl::StatusOr<HyperWitness> MatrixWitnessToHyperWitness(
    const Hyper& spec, const RefinementMatrix& r);

// Reverse construction: rows are the inners of Avg(w), columns the inners of
// (D Avg).w. Errors: DegenerateWitness.
absl::StatusOr<RefinementMatrix> HyperWitnessToMatrix(const HyperWitness& w);

// Refines and not equal. Errors: SpaceMismatch.
absl::StatusOr<bool> StrictRefines(const Hyper& spec, const Hyper& impl);

// E_spec U_l > E_impl U_l, exactly.
absl::StatusOr<bool> Separates(const LossFunction& l, const Hyper& spec,
                               const Hyper& impl);

}  // namespace hyperflow

#endif  // HYPERFLOW_REFINEMENT_H_
