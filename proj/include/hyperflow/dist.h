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

#ifndef HYPERFLOW_DIST_H_
#define HYPERFLOW_DIST_H_

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hyperflow/rational.h"
#include "hyperflow/state_space.h"

namespace hyperflow {

// Sparse sub-distribution over a StateSpace. Entries are sorted by state
// index and strictly positive; total weight is at most 1.
class SubDist {
 public:
  using Entry = std::pair<size_t, Rat>;

  // Duplicate indices are summed; zeros are dropped.
  static absl::StatusOr<SubDist> Create(SpacePtr space,
                                        std::vector<Entry> entries);
  static absl::StatusOr<SubDist> FromDense(SpacePtr space,
                                           const std::vector<Rat>& values);
  static absl::StatusOr<SubDist> FromLabels(
      SpacePtr space, const std::vector<std::pair<std::string, Rat>>& values);
  static SubDist Zero(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<Entry>& entries() const { return entries_; }
  size_t support_size() const { return entries_.size(); }

  // Probability of state i (0 outside the support).
  Rat operator[](size_t i) const;
  absl::StatusOr<Rat> At(absl::string_view label) const;

  Rat Weight() const;
  std::vector<Rat> Dense() const;
  std::string DebugString() const;

  // Lexicographic order on the dense vector in StateSpace order.
  friend int Compare(const SubDist& a, const SubDist& b);
  friend bool operator==(const SubDist& a, const SubDist& b) {
    return Compare(a, b) == 0;
  }
  friend bool operator!=(const SubDist& a, const SubDist& b) {
    return Compare(a, b) != 0;
  }
  friend bool operator<(const SubDist& a, const SubDist& b) {
    return Compare(a, b) < 0;
  }

 protected:
  SubDist(SpacePtr space, std::vector<Entry> entries)
      : space_(std::move(space)), entries_(std::move(entries)) {}

  SpacePtr space_;
  std::vector<Entry> entries_;

  friend class Dist;
};

// A SubDist of weight exactly 1.
class Dist : public SubDist {
 public:
  static absl::StatusOr<Dist> Create(SpacePtr space,
                                     std::vector<Entry> entries);
  static absl::StatusOr<Dist> FromDense(SpacePtr space,
                                        const std::vector<Rat>& values);
  static absl::StatusOr<Dist> FromLabels(
      SpacePtr space, const std::vector<std::pair<std::string, Rat>>& values);
  static absl::StatusOr<Dist> FromSubDist(const SubDist& d);
  static Dist Point(SpacePtr space, size_t index);
  static Dist Uniform(SpacePtr space);

  // Trusted constructor for internal builders: entries must already be
  // sorted, positive and sum to 1.
  static Dist Unchecked(SpacePtr space, std::vector<Entry> entries);

 private:
  using SubDist::SubDist;
};

Rat Weight(const SubDist& d);

// Errors: ZeroWeight.
absl::StatusOr<Dist> Normalize(const SubDist& d);

// Errors: UnknownLabel.
absl::StatusOr<Dist> Point(absl::string_view label, const SpacePtr& space);

// p*a + (1-p)*b. Errors: BadProbability, SpaceMismatch.
absl::StatusOr<Dist> WeightedSum(const Dist& a, const Dist& b, const Rat& p);

// The two-point distribution z p(+) z'.
absl::StatusOr<Dist> TwoPoint(absl::string_view z, absl::string_view z2,
                              const Rat& p, const SpacePtr& space);

// Expected value of a state function under d.
Rat ExpectState(const SubDist& d, const std::function<Rat(size_t)>& f);

// Total-variation distance, 1/2 * sum |a.x - b.x|. Errors: SpaceMismatch.
absl::StatusOr<Rat> KantorovichDist(const Dist& a, const Dist& b);

}  // namespace hyperflow

#endif  // HYPERFLOW_DIST_H_
