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

#include "hyperflow/dist.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

absl::StatusOr<SubDist> SubDist::Create(SpacePtr space,
                                        std::vector<Entry> entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& [i, p] : entries) {
    if (i >= space->size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("state index ", i, " out of range"));
    }
    if (sgn(p) < 0) {
      return BadProbabilityError(
          absl::StrCat("negative probability ", FormatRat(p)));
    }
    if (!merged.empty() && merged.back().first == i) {
      merged.back().second += p;
    } else {
      merged.emplace_back(i, std::move(p));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return sgn(e.second) == 0; });
  SubDist d(std::move(space), std::move(merged));
  if (d.Weight() > 1) {
    return BadProbabilityError(
        absl::StrCat("weight ", FormatRat(d.Weight()), " exceeds 1"));
  }
  return d;
}

absl::StatusOr<SubDist> SubDist::FromDense(SpacePtr space,
                                           const std::vector<Rat>& values) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (values.size() != space->size()) {
    return DimensionMismatchError(absl::StrCat("expected ", space->size(),
                                               " values, got ", values.size()));
  }
  std::vector<Entry> entries;
  for (size_t i = 0; i < values.size(); ++i) entries.emplace_back(i, values[i]);
  return Create(std::move(space), std::move(entries));
}

absl::StatusOr<SubDist> SubDist::FromLabels(
    SpacePtr space, const std::vector<std::pair<std::string, Rat>>& values) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  std::vector<Entry> entries;
  for (const auto& [label, p] : values) {
    auto idx = space->IndexOf(label);
    if (!idx) return UnknownLabelError(label);
    entries.emplace_back(*idx, p);
  }
  return Create(std::move(space), std::move(entries));
}

SubDist SubDist::Zero(SpacePtr space) { return SubDist(std::move(space), {}); }

Rat SubDist::operator[](size_t i) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), i,
      [](const Entry& e, size_t key) { return e.first < key; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Rat(0);
}

absl::StatusOr<Rat> SubDist::At(absl::string_view label) const {
  auto idx = space_->IndexOf(label);
  if (!idx) return UnknownLabelError(label);
  return (*this)[*idx];
}

Rat SubDist::Weight() const {
  Rat w = 0;
  for (const auto& e : entries_) w += e.second;
  return w;
}

std::vector<Rat> SubDist::Dense() const {
  std::vector<Rat> out(space_->size(), Rat(0));
  for (const auto& [i, p] : entries_) out[i] = p;
  return out;
}

std::string SubDist::DebugString() const {
  std::vector<std::string> parts;
  for (const auto& [i, p] : entries_) {
    parts.push_back(absl::StrCat(space_->label(i), ":", FormatRat(p)));
  }
  return absl::StrCat("{", absl::StrJoin(parts, ", "), "}");
}

int Compare(const SubDist& a, const SubDist& b) {
  // Walk both sparse vectors in index order; a missing entry is zero.
  size_t i = 0, j = 0;
  const auto& ea = a.entries_;
  const auto& eb = b.entries_;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      return 1;  // a positive where b is zero
    }
    if (i == ea.size() || eb[j].first < ea[i].first) return -1;
    const int c = cmp(ea[i].second, eb[j].second);
    if (c != 0) return c < 0 ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

absl::StatusOr<Dist> Dist::Create(SpacePtr space, std::vector<Entry> entries) {
  ASSIGN_OR_RETURN(SubDist d,
                   SubDist::Create(std::move(space), std::move(entries)));
  return FromSubDist(d);
}

absl::StatusOr<Dist> Dist::FromDense(SpacePtr space,
                                     const std::vector<Rat>& values) {
  ASSIGN_OR_RETURN(SubDist d, SubDist::FromDense(std::move(space), values));
  return FromSubDist(d);
}

absl::StatusOr<Dist> Dist::FromLabels(
    SpacePtr space, const std::vector<std::pair<std::string, Rat>>& values) {
  ASSIGN_OR_RETURN(SubDist d, SubDist::FromLabels(std::move(space), values));
  return FromSubDist(d);
}

absl::StatusOr<Dist> Dist::FromSubDist(const SubDist& d) {
  if (d.Weight() != 1) {
    return BadProbabilityError(absl::StrCat("distribution weight is ",
                                            FormatRat(d.Weight()), ", not 1"));
  }
  return Dist(d.space_, d.entries_);
}

Dist Dist::Point(SpacePtr space, size_t index) {
  return Dist(std::move(space), {{index, Rat(1)}});
}

Dist Dist::Uniform(SpacePtr space) {
  const size_t n = space->size();
  std::vector<Entry> entries;
  entries.reserve(n);
  for (size_t i = 0; i < n; ++i) entries.emplace_back(i, Rat(1, n));
  return Dist(std::move(space), std::move(entries));
}

Dist Dist::Unchecked(SpacePtr space, std::vector<Entry> entries) {
  return Dist(std::move(space), std::move(entries));
}

Rat Weight(const SubDist& d) { return d.Weight(); }

absl::StatusOr<Dist> Normalize(const SubDist& d) {
  const Rat w = d.Weight();
  if (sgn(w) == 0)
    return ZeroWeightError("cannot normalize a zero sub-distribution");
  std::vector<SubDist::Entry> entries;
  entries.reserve(d.entries().size());
  for (const auto& [i, p] : d.entries()) entries.emplace_back(i, p / w);
  return Dist::Unchecked(d.space(), std::move(entries));
}

absl::StatusOr<Dist> Point(absl::string_view label, const SpacePtr& space) {
  auto idx = space->IndexOf(label);
  if (!idx) return UnknownLabelError(label);
  return Dist::Point(space, *idx);
}

absl::StatusOr<Dist> WeightedSum(const Dist& a, const Dist& b, const Rat& p) {
  if (sgn(p) < 0 || p > 1) {
    return BadProbabilityError(absl::StrCat("p = ", FormatRat(p)));
  }
  if (!SameSpace(a.space(), b.space())) {
    return SpaceMismatchError("weighted sum over different spaces");
  }
  const Rat q = 1 - p;
  std::vector<SubDist::Entry> entries;
  for (const auto& [i, v] : a.entries()) entries.emplace_back(i, p * v);
  for (const auto& [i, v] : b.entries()) entries.emplace_back(i, q * v);
  return Dist::Create(a.space(), std::move(entries));
}

absl::StatusOr<Dist> TwoPoint(absl::string_view z, absl::string_view z2,
                              const Rat& p, const SpacePtr& space) {
  ASSIGN_OR_RETURN(Dist a, Point(z, space));
  ASSIGN_OR_RETURN(Dist b, Point(z2, space));
  return WeightedSum(a, b, p);
}

Rat ExpectState(const SubDist& d, const std::function<Rat(size_t)>& f) {
  Rat total = 0;
  for (const auto& [i, p] : d.entries()) total += p * f(i);
  return total;
}

absl::StatusOr<Rat> KantorovichDist(const Dist& a, const Dist& b) {
  if (!SameSpace(a.space(), b.space())) {
    return SpaceMismatchError("distance between different spaces");
  }
  Rat total = 0;
  const std::vector<Rat> da = a.Dense();
  const std::vector<Rat> db = b.Dense();
  for (size_t i = 0; i < da.size(); ++i) total += abs(da[i] - db[i]);
  return total / 2;
}

}  // namespace hyperflow
