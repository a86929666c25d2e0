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

#ifndef HYPERFLOW_MATRIX_H_
#define HYPERFLOW_MATRIX_H_

#include <cstddef>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/dist.h"
#include "hyperflow/obs_label.h"
#include "hyperflow/rational.h"
#include "hyperflow/state_space.h"

namespace hyperflow {

// Row-stochastic matrix from states to observations.
class ChannelMatrix {
 public:
  // Errors: DimensionMismatch, NotStochastic, InvalidArgument on duplicate
  // column labels.
  static absl::StatusOr<ChannelMatrix> Create(
      SpacePtr space, std::vector<ObsLabel> cols,
      const std::vector<std::vector<Rat>>& entries);
  // Row-major flat entries.
  static absl::StatusOr<ChannelMatrix> CreateFlat(SpacePtr space,
                                                  std::vector<ObsLabel> cols,
                                                  std::vector<Rat> entries);
  // The null channel: one column "•".
  static ChannelMatrix Null(SpacePtr space);
  // Reveals the state: columns are the state labels.
  static ChannelMatrix Identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<ObsLabel>& cols() const { return cols_; }
  size_t num_rows() const { return space_->size(); }
  size_t num_cols() const { return cols_.size(); }
  const Rat& at(size_t x, size_t y) const {
    return entries_[x * cols_.size() + y];
  }

  friend bool operator==(const ChannelMatrix& a, const ChannelMatrix& b);

 private:
  ChannelMatrix(SpacePtr space, std::vector<ObsLabel> cols,
                std::vector<Rat> entries)
      : space_(std::move(space)),
        cols_(std::move(cols)),
        entries_(std::move(entries)) {}

  SpacePtr space_;
  std::vector<ObsLabel> cols_;
  std::vector<Rat> entries_;
};

// Row-stochastic square matrix over a state space.
class MarkovMatrix {
 public:
  // Errors: DimensionMismatch, NotStochastic.
  static absl::StatusOr<MarkovMatrix> Create(
      SpacePtr space, const std::vector<std::vector<Rat>>& entries);
  static absl::StatusOr<MarkovMatrix> CreateFlat(SpacePtr space,
                                                 std::vector<Rat> entries);
  static MarkovMatrix Identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  size_t size() const { return space_->size(); }
  const Rat& at(size_t x, size_t x2) const { return entries_[x * size() + x2]; }

  friend bool operator==(const MarkovMatrix& a, const MarkovMatrix& b);

 private:
  MarkovMatrix(SpacePtr space, std::vector<Rat> entries)
      : space_(std::move(space)), entries_(std::move(entries)) {}

  SpacePtr space_;
  std::vector<Rat> entries_;
};

// H[x][y][x'] with sum over (y, x') equal to 1 for every x.
class HmmTensor {
 public:
  // entries[x][y][x']. Errors: DimensionMismatch, NotStochastic.
  static absl::StatusOr<HmmTensor> Create(
      SpacePtr space, std::vector<ObsLabel> obs,
      const std::vector<std::vector<std::vector<Rat>>>& entries);
  // Flat entries in (x, y, x') row-major order.
  static absl::StatusOr<HmmTensor> CreateFlat(SpacePtr space,
                                              std::vector<ObsLabel> obs,
                                              std::vector<Rat> entries);

  const SpacePtr& space() const { return space_; }
  const std::vector<ObsLabel>& obs() const { return obs_; }
  size_t num_states() const { return space_->size(); }
  size_t num_obs() const { return obs_.size(); }
  const Rat& at(size_t x, size_t y, size_t x2) const {
    return entries_[(x * obs_.size() + y) * num_states() + x2];
  }

  friend bool operator==(const HmmTensor& a, const HmmTensor& b);

 private:
  HmmTensor(SpacePtr space, std::vector<ObsLabel> obs, std::vector<Rat> entries)
      : space_(std::move(space)),
        obs_(std::move(obs)),
        entries_(std::move(entries)) {}

  SpacePtr space_;
  std::vector<ObsLabel> obs_;
  std::vector<Rat> entries_;
};

// Nonnegative matrix with total mass 1; rows are states, columns
// observations.
class JointMatrix {
 public:
  // Errors: DimensionMismatch, BadProbability, NotAJoint.
  static absl::StatusOr<JointMatrix> Create(
      SpacePtr space, std::vector<ObsLabel> cols,
      const std::vector<std::vector<Rat>>& entries);
  static absl::StatusOr<JointMatrix> CreateFlat(SpacePtr space,
                                                std::vector<ObsLabel> cols,
                                                std::vector<Rat> entries);

  const SpacePtr& space() const { return space_; }
  const std::vector<ObsLabel>& cols() const { return cols_; }
  size_t num_rows() const { return space_->size(); }
  size_t num_cols() const { return cols_.size(); }
  const Rat& at(size_t x, size_t y) const {
    return entries_[x * cols_.size() + y];
  }
  // Column y as a sub-distribution over the rows.
  SubDist Column(size_t y) const;
  Dist RowMarginal() const;

  friend bool operator==(const JointMatrix& a, const JointMatrix& b);

 private:
  JointMatrix(SpacePtr space, std::vector<ObsLabel> cols,
              std::vector<Rat> entries)
      : space_(std::move(space)),
        cols_(std::move(cols)),
        entries_(std::move(entries)) {}

  SpacePtr space_;
  std::vector<ObsLabel> cols_;
  std::vector<Rat> entries_;
};

// pi > C. Errors: SpaceMismatch.
absl::StatusOr<JointMatrix> ApplyPriorChannel(const Dist& prior,
                                              const ChannelMatrix& c);

// C > M, H[x][y][x'] = C[x][y] * M[x][x']. Errors: SpaceMismatch.
absl::StatusOr<HmmTensor> MakeStep(const ChannelMatrix& c,
                                   const MarkovMatrix& m);
HmmTensor ChannelToTensor(const ChannelMatrix& c);
HmmTensor MarkovToTensor(const MarkovMatrix& m);

// (H1;H2)[x][(y1,y2)][x'] = sum_x'' H1[x][y1][x''] * H2[x''][y2][x'].
// Errors: SpaceMismatch.
absl::StatusOr<HmmTensor> ComposeTensors(const HmmTensor& h1,
                                         const HmmTensor& h2);

// (C1 || C2)[x][(y1,y2)] = C1[x][y1] * C2[x][y2]. Errors: SpaceMismatch.
absl::StatusOr<ChannelMatrix> ParallelChannels(const ChannelMatrix& c1,
                                               const ChannelMatrix& c2);

// C . R where R's row labels are C's observation labels (as strings).
// Errors: SpaceMismatch.
absl::StatusOr<ChannelMatrix> Cascade(const ChannelMatrix& c,
                                      const ChannelMatrix& r);
// J . R for a joint matrix. Errors: SpaceMismatch.
absl::StatusOr<JointMatrix> PostProcess(const JointMatrix& j,
                                        const ChannelMatrix& r);

// M1 . M2. Errors: SpaceMismatch.
absl::StatusOr<MarkovMatrix> MultiplyMarkov(const MarkovMatrix& m1,
                                            const MarkovMatrix& m2);

// J[x'][y] = sum_x pi[x] H[x][y][x']. Errors: SpaceMismatch.
absl::StatusOr<JointMatrix> JointOfHmm(const Dist& prior, const HmmTensor& h);

// Replaces every observation tuple with the atom "a,b,c" of its flattened
// leaves. Used to compare tensors up to tuple re-association.
HmmTensor FlattenObservations(const HmmTensor& h);

// Same tensor with observation columns reordered by label.
HmmTensor SortObservations(const HmmTensor& h);

}  // namespace hyperflow

#endif  // HYPERFLOW_MATRIX_H_
