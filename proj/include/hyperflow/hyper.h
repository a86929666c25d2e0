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

#ifndef HYPERFLOW_HYPER_H_
#define HYPERFLOW_HYPER_H_

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperflow/dist.h"
#include "hyperflow/rational.h"
#include "hyperflow/state_space.h"

namespace hyperflow {

// Finitely supported measure over values of T, kept in canonical form: atoms
// sorted by T's order, equal points merged, zero weights dropped. T needs
// operator< and operator==.
template <typename T>
class FiniteMeasure {
 public:
  using Atom = std::pair<T, Rat>;

  FiniteMeasure() = default;
  explicit FiniteMeasure(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.first < b.first; });
    for (auto& atom : atoms) {
      if (sgn(atom.second) == 0) continue;
      if (!atoms_.empty() && atoms_.back().first == atom.first) {
        atoms_.back().second += atom.second;
      } else {
        atoms_.push_back(std::move(atom));
      }
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  Rat Weight() const {
    Rat w = 0;
    for (const auto& a : atoms_) w += a.second;
    return w;
  }

  friend int Compare(const FiniteMeasure& a, const FiniteMeasure& b) {
    const size_t n = std::min(a.atoms_.size(), b.atoms_.size());
    for (size_t i = 0; i < n; ++i) {
      if (a.atoms_[i].first < b.atoms_[i].first) return -1;
      if (b.atoms_[i].first < a.atoms_[i].first) return 1;
      const int c = cmp(a.atoms_[i].second, b.atoms_[i].second);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    if (a.atoms_.size() == b.atoms_.size()) return 0;
    return a.atoms_.size() < b.atoms_.size() ? -1 : 1;
  }
  friend bool operator==(const FiniteMeasure& a, const FiniteMeasure& b) {
    return Compare(a, b) == 0;
  }
  friend bool operator<(const FiniteMeasure& a, const FiniteMeasure& b) {
    return Compare(a, b) < 0;
  }

 private:
  std::vector<Atom> atoms_;
};

// Outer distribution over inner Dists, weight <= 1.
class SubHyper {
 public:
  using Atom = FiniteMeasure<Dist>::Atom;

  // Errors: SpaceMismatch, BadProbability.
  static absl::StatusOr<SubHyper> Create(SpacePtr space,
                                         std::vector<Atom> atoms);
  static SubHyper Empty(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return measure_.atoms(); }
  Rat Weight() const { return measure_.Weight(); }
  std::string DebugString() const;

  friend bool operator==(const SubHyper& a, const SubHyper& b) {
    return a.measure_ == b.measure_;
  }

 private:
  SubHyper(SpacePtr space, FiniteMeasure<Dist> measure)
      : space_(std::move(space)), measure_(std::move(measure)) {}

  SpacePtr space_;
  FiniteMeasure<Dist> measure_;
};

// Hyper-distribution: outer weights sum to exactly 1.
class Hyper {
 public:
  using Atom = FiniteMeasure<Dist>::Atom;

  // Canonicalizes any permutation/split of the atoms. Errors: SpaceMismatch,
  // BadProbability (weights must be >= 0 and sum to 1).
  static absl::StatusOr<Hyper> Create(SpacePtr space, std::vector<Atom> atoms);
  // Sum of sub-hypers whose weights add up to 1.
  static absl::StatusOr<Hyper> FromSubHypers(
      SpacePtr space, const std::vector<SubHyper>& parts);
  static Hyper PointHyper(const Dist& d);
  // Trusted: weights nonnegative, summing to 1, inners over `space`.
  static Hyper Unchecked(SpacePtr space, std::vector<Atom> atoms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return measure_.atoms(); }
  size_t size() const { return measure_.size(); }
  std::string DebugString() const;

  friend int Compare(const Hyper& a, const Hyper& b) {
    return Compare(a.measure_, b.measure_);
  }
  friend bool operator==(const Hyper& a, const Hyper& b) {
    return a.measure_ == b.measure_;
  }
  friend bool operator!=(const Hyper& a, const Hyper& b) {
    return !(a.measure_ == b.measure_);
  }
  friend bool operator<(const Hyper& a, const Hyper& b) {
    return a.measure_ < b.measure_;
  }

 private:
  Hyper(SpacePtr space, FiniteMeasure<Dist> measure)
      : space_(std::move(space)), measure_(std::move(measure)) {}

  SpacePtr space_;
  FiniteMeasure<Dist> measure_;
};

// Distribution over hypers, as used by refinement witnesses.
class HyperWitness {
 public:
  using Atom = FiniteMeasure<Hyper>::Atom;

  static absl::StatusOr<HyperWitness> Create(SpacePtr space,
                                             std::vector<Atom> atoms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return measure_.atoms(); }
  size_t size() const { return measure_.size(); }
  std::string DebugString() const;

  friend bool operator==(const HyperWitness& a, const HyperWitness& b) {
    return a.measure_ == b.measure_;
  }

 private:
  HyperWitness(SpacePtr space, FiniteMeasure<Hyper> measure)
      : space_(std::move(space)), measure_(std::move(measure)) {}

  SpacePtr space_;
  FiniteMeasure<Hyper> measure_;
};

Hyper PointHyper(const Dist& d);

// Empty sub-hyper for a zero sub-distribution, else {normalize(d) -> |d|}.
SubHyper SubPoint(const SubDist& d);

// Avg.Delta: the weighted mixture of the inners.
Dist Avg(const Hyper& h);
// Avg at the next level: the mixture of the hypers, as a Hyper.
Hyper Avg(const HyperWitness& w);

using DistMap = std::function<Dist(const Dist&)>;

// Errors: SpaceMismatch if f leaves the space of h's inners inconsistently.
absl::StatusOr<Hyper> PushForward(const DistMap& f, const Hyper& h);

// (D Avg).w: each hyper in w is replaced by its average.
Hyper PushForwardAvg(const HyperWitness& w);

// D eta . h: every inner becomes its own point hyper.
HyperWitness PushForwardPoint(const Hyper& h);

Rat Expect(const Hyper& h, const std::function<Rat(const Dist&)>& u);
double ExpectDouble(const Hyper& h,
                    const std::function<double(const Dist&)>& u);

// p*a + (1-p)*b at the outer level. Errors: BadProbability, SpaceMismatch.
absl::StatusOr<Hyper> WeightedSum(const Hyper& a, const Hyper& b, const Rat& p);

// Level-2 Kantorovich distance: optimal transport between the outers with
// ground cost the total-variation distance between inners.
// Errors: SpaceMismatch.
absl::StatusOr<Rat> KantorovichHyper(const Hyper& a, const Hyper& b);

}  // namespace hyperflow

#endif  // HYPERFLOW_HYPER_H_
