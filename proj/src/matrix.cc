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

#include "hyperflow/matrix.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {
namespace {

absl::Status CheckDistinct(const std::vector<ObsLabel>& cols) {
  std::set<ObsLabel> seen;
  for (const auto& c : cols) {
    if (!seen.insert(c).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate observation label '", c.ToString(), "'"));
    }
  }
  return absl::OkStatus();
}

// Checks nonnegativity and that each block of `width` entries sums to 1.
absl::Status CheckStochastic(const SpacePtr& space,
                             const std::vector<Rat>& flat, size_t width) {
  for (size_t x = 0; x < space->size(); ++x) {
    Rat sum = 0;
    for (size_t k = 0; k < width; ++k) {
      const Rat& v = flat[x * width + k];
      if (sgn(v) < 0) {
        return NotStochasticError(
            absl::StrCat("negative entry in row '", space->label(x), "'"));
      }
      sum += v;
    }
    if (sum != 1) {
      return NotStochasticError(
          absl::StrCat("row '", space->label(x), "' sums to ", FormatRat(sum)));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Rat>> Flatten2(
    const std::vector<std::vector<Rat>>& rows, size_t n_rows, size_t n_cols) {
  if (rows.size() != n_rows) {
    return DimensionMismatchError(
        absl::StrCat("expected ", n_rows, " rows, got ", rows.size()));
  }
  std::vector<Rat> flat;
  flat.reserve(n_rows * n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) {
      return DimensionMismatchError(
          absl::StrCat("expected ", n_cols, " columns, got ", row.size()));
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

std::vector<ObsLabel> StateLabels(const SpacePtr& space) {
  std::vector<ObsLabel> out;
  for (const auto& l : space->labels()) out.emplace_back(l);
  return out;
}

}  // namespace

absl::StatusOr<ChannelMatrix> ChannelMatrix::Create(
    SpacePtr space, std::vector<ObsLabel> cols,
    const std::vector<std::vector<Rat>>& entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  ASSIGN_OR_RETURN(std::vector<Rat> flat,
                   Flatten2(entries, space->size(), cols.size()));
  return CreateFlat(std::move(space), std::move(cols), std::move(flat));
}

absl::StatusOr<ChannelMatrix> ChannelMatrix::CreateFlat(
    SpacePtr space, std::vector<ObsLabel> cols, std::vector<Rat> entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (cols.empty())
    return absl::InvalidArgumentError("channel without columns");
  if (entries.size() != space->size() * cols.size()) {
    return DimensionMismatchError("channel entry count");
  }
  RETURN_IF_ERROR(CheckDistinct(cols));
  RETURN_IF_ERROR(CheckStochastic(space, entries, cols.size()));
  return ChannelMatrix(std::move(space), std::move(cols), std::move(entries));
}

ChannelMatrix ChannelMatrix::Null(SpacePtr space) {
  std::vector<Rat> flat(space->size(), Rat(1));
  return ChannelMatrix(std::move(space), {ObsLabel(kNullObservation)},
                       std::move(flat));
}

ChannelMatrix ChannelMatrix::Identity(SpacePtr space) {
  const size_t n = space->size();
  std::vector<Rat> flat(n * n, Rat(0));
  for (size_t i = 0; i < n; ++i) flat[i * n + i] = 1;
  std::vector<ObsLabel> cols = StateLabels(space);
  return ChannelMatrix(std::move(space), std::move(cols), std::move(flat));
}

bool operator==(const ChannelMatrix& a, const ChannelMatrix& b) {
  return SameSpace(a.space_, b.space_) && a.cols_ == b.cols_ &&
         a.entries_ == b.entries_;
}

absl::StatusOr<MarkovMatrix> MarkovMatrix::Create(
    SpacePtr space, const std::vector<std::vector<Rat>>& entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  ASSIGN_OR_RETURN(std::vector<Rat> flat,
                   Flatten2(entries, space->size(), space->size()));
  return CreateFlat(std::move(space), std::move(flat));
}

absl::StatusOr<MarkovMatrix> MarkovMatrix::CreateFlat(
    SpacePtr space, std::vector<Rat> entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (entries.size() != space->size() * space->size()) {
    return DimensionMismatchError("markov entry count");
  }
  RETURN_IF_ERROR(CheckStochastic(space, entries, space->size()));
  return MarkovMatrix(std::move(space), std::move(entries));
}

MarkovMatrix MarkovMatrix::Identity(SpacePtr space) {
  const size_t n = space->size();
  std::vector<Rat> flat(n * n, Rat(0));
  for (size_t i = 0; i < n; ++i) flat[i * n + i] = 1;
  return MarkovMatrix(std::move(space), std::move(flat));
}

bool operator==(const MarkovMatrix& a, const MarkovMatrix& b) {
  return SameSpace(a.space_, b.space_) && a.entries_ == b.entries_;
}

absl::StatusOr<HmmTensor> HmmTensor::Create(
    SpacePtr space, std::vector<ObsLabel> obs,
    const std::vector<std::vector<std::vector<Rat>>>& entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  const size_t n = space->size();
  if (entries.size() != n) return DimensionMismatchError("tensor row count");
  std::vector<Rat> flat;
  flat.reserve(n * obs.size() * n);
  for (const auto& layer : entries) {
    ASSIGN_OR_RETURN(std::vector<Rat> part, Flatten2(layer, obs.size(), n));
    flat.insert(flat.end(), part.begin(), part.end());
  }
  return CreateFlat(std::move(space), std::move(obs), std::move(flat));
}

absl::StatusOr<HmmTensor> HmmTensor::CreateFlat(SpacePtr space,
                                                std::vector<ObsLabel> obs,
                                                std::vector<Rat> entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (obs.empty())
    return absl::InvalidArgumentError("tensor without observations");
  const size_t n = space->size();
  if (entries.size() != n * obs.size() * n) {
    return DimensionMismatchError("tensor entry count");
  }
  RETURN_IF_ERROR(CheckDistinct(obs));
  RETURN_IF_ERROR(CheckStochastic(space, entries, obs.size() * n));
  return HmmTensor(std::move(space), std::move(obs), std::move(entries));
}

bool operator==(const HmmTensor& a, const HmmTensor& b) {
  return SameSpace(a.space_, b.space_) && a.obs_ == b.obs_ &&
         a.entries_ == b.entries_;
}

absl::StatusOr<JointMatrix> JointMatrix::Create(
    SpacePtr space, std::vector<ObsLabel> cols,
    const std::vector<std::vector<Rat>>& entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  ASSIGN_OR_RETURN(std::vector<Rat> flat,
                   Flatten2(entries, space->size(), cols.size()));
  return CreateFlat(std::move(space), std::move(cols), std::move(flat));
}

absl::StatusOr<JointMatrix> JointMatrix::CreateFlat(SpacePtr space,
                                                    std::vector<ObsLabel> cols,
                                                    std::vector<Rat> entries) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (entries.size() != space->size() * cols.size()) {
    return DimensionMismatchError("joint entry count");
  }
  RETURN_IF_ERROR(CheckDistinct(cols));
  Rat total = 0;
  for (const Rat& v : entries) {
    if (sgn(v) < 0) return BadProbabilityError("negative joint entry");
    total += v;
  }
  if (total != 1) {
    return NotAJointError(absl::StrCat("entries sum to ", FormatRat(total)));
  }
  return JointMatrix(std::move(space), std::move(cols), std::move(entries));
}

SubDist JointMatrix::Column(size_t y) const {
  std::vector<SubDist::Entry> entries;
  for (size_t x = 0; x < num_rows(); ++x) {
    if (sgn(at(x, y)) != 0) entries.emplace_back(x, at(x, y));
  }
  return *SubDist::Create(space_, std::move(entries));
}

Dist JointMatrix::RowMarginal() const {
  std::vector<SubDist::Entry> entries;
  for (size_t x = 0; x < num_rows(); ++x) {
    Rat s = 0;
    for (size_t y = 0; y < num_cols(); ++y) s += at(x, y);
    if (sgn(s) != 0) entries.emplace_back(x, s);
  }
  return Dist::Unchecked(space_, std::move(entries));
}

bool operator==(const JointMatrix& a, const JointMatrix& b) {
  return SameSpace(a.space_, b.space_) && a.cols_ == b.cols_ &&
         a.entries_ == b.entries_;
}

absl::StatusOr<JointMatrix> ApplyPriorChannel(const Dist& prior,
                                              const ChannelMatrix& c) {
  if (!SameSpace(prior.space(), c.space())) {
    return SpaceMismatchError("prior and channel rows differ");
  }
  const size_t k = c.num_cols();
  std::vector<Rat> flat(c.num_rows() * k, Rat(0));
  for (const auto& [x, p] : prior.entries()) {
    for (size_t y = 0; y < k; ++y) flat[x * k + y] = p * c.at(x, y);
  }
  return JointMatrix::CreateFlat(c.space(), c.cols(), std::move(flat));
}

absl::StatusOr<HmmTensor> MakeStep(const ChannelMatrix& c,
                                   const MarkovMatrix& m) {
  if (!SameSpace(c.space(), m.space())) {
    return SpaceMismatchError("channel and markov over different spaces");
  }
  const size_t n = c.num_rows();
  const size_t k = c.num_cols();
  std::vector<Rat> flat(n * k * n, Rat(0));
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < k; ++y) {
      if (sgn(c.at(x, y)) == 0) continue;
      for (size_t x2 = 0; x2 < n; ++x2) {
        flat[(x * k + y) * n + x2] = c.at(x, y) * m.at(x, x2);
      }
    }
  }
  return HmmTensor::CreateFlat(c.space(), c.cols(), std::move(flat));
}

HmmTensor ChannelToTensor(const ChannelMatrix& c) {
  return MakeStep(c, MarkovMatrix::Identity(c.space())).value();
}

HmmTensor MarkovToTensor(const MarkovMatrix& m) {
  return MakeStep(ChannelMatrix::Null(m.space()), m).value();
}

absl::StatusOr<HmmTensor> ComposeTensors(const HmmTensor& h1,
                                         const HmmTensor& h2) {
  if (!SameSpace(h1.space(), h2.space())) {
    return SpaceMismatchError("composed tensors over different spaces");
  }
  const size_t n = h1.num_states();
  const size_t k1 = h1.num_obs();
  const size_t k2 = h2.num_obs();
  std::vector<ObsLabel> obs;
  obs.reserve(k1 * k2);
  for (size_t y1 = 0; y1 < k1; ++y1) {
    for (size_t y2 = 0; y2 < k2; ++y2) {
      obs.push_back(ObsLabel::Tuple({h1.obs()[y1], h2.obs()[y2]}));
    }
  }
  const size_t k = k1 * k2;
  std::vector<Rat> flat(n * k * n, Rat(0));
  for (size_t x = 0; x < n; ++x) {
    for (size_t y1 = 0; y1 < k1; ++y1) {
      for (size_t mid = 0; mid < n; ++mid) {
        const Rat& a = h1.at(x, y1, mid);
        if (sgn(a) == 0) continue;
        for (size_t y2 = 0; y2 < k2; ++y2) {
          const size_t base = (x * k + y1 * k2 + y2) * n;
          for (size_t x2 = 0; x2 < n; ++x2) {
            const Rat& b = h2.at(mid, y2, x2);
            if (sgn(b) != 0) flat[base + x2] += a * b;
          }
        }
      }
    }
  }
  return HmmTensor::CreateFlat(h1.space(), std::move(obs), std::move(flat));
}

absl::StatusOr<ChannelMatrix> ParallelChannels(const ChannelMatrix& c1,
                                               const ChannelMatrix& c2) {
  if (!SameSpace(c1.space(), c2.space())) {
    return SpaceMismatchError("parallel channels over different spaces");
  }
  const size_t n = c1.num_rows();
  const size_t k1 = c1.num_cols();
  const size_t k2 = c2.num_cols();
  std::vector<ObsLabel> cols;
  for (size_t a = 0; a < k1; ++a) {
    for (size_t b = 0; b < k2; ++b) {
      cols.push_back(ObsLabel::Tuple({c1.cols()[a], c2.cols()[b]}));
    }
  }
  std::vector<Rat> flat(n * k1 * k2);
  for (size_t x = 0; x < n; ++x) {
    for (size_t a = 0; a < k1; ++a) {
      for (size_t b = 0; b < k2; ++b) {
        flat[(x * k1 + a) * k2 + b] = c1.at(x, a) * c2.at(x, b);
      }
    }
  }
  return ChannelMatrix::CreateFlat(c1.space(), std::move(cols),
                                   std::move(flat));
}

namespace {

absl::Status CheckPostProcessRows(const std::vector<ObsLabel>& cols,
                                  const ChannelMatrix& r) {
  if (cols.size() != r.num_rows()) {
    return SpaceMismatchError("post-processing rows do not match observations");
  }
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].ToString() != r.space()->label(i)) {
      return SpaceMismatchError(absl::StrCat("observation '",
                                             cols[i].ToString(), "' vs row '",
                                             r.space()->label(i), "'"));
    }
  }
  return absl::OkStatus();
}

std::vector<Rat> MatMul(size_t n, size_t k, size_t m,
                        const std::function<const Rat&(size_t, size_t)>& a,
                        const std::function<const Rat&(size_t, size_t)>& b) {
  std::vector<Rat> out(n * m, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t l = 0; l < k; ++l) {
      const Rat& av = a(i, l);
      if (sgn(av) == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i * m + j] += av * b(l, j);
    }
  }
  return out;
}

}  // namespace

absl::StatusOr<ChannelMatrix> Cascade(const ChannelMatrix& c,
                                      const ChannelMatrix& r) {
  RETURN_IF_ERROR(CheckPostProcessRows(c.cols(), r));
  std::vector<Rat> flat = MatMul(
      c.num_rows(), c.num_cols(), r.num_cols(),
      [&](size_t i, size_t j) -> const Rat& { return c.at(i, j); },
      [&](size_t i, size_t j) -> const Rat& { return r.at(i, j); });
  return ChannelMatrix::CreateFlat(c.space(), r.cols(), std::move(flat));
}

absl::StatusOr<JointMatrix> PostProcess(const JointMatrix& j,
                                        const ChannelMatrix& r) {
  RETURN_IF_ERROR(CheckPostProcessRows(j.cols(), r));
  std::vector<Rat> flat = MatMul(
      j.num_rows(), j.num_cols(), r.num_cols(),
      [&](size_t a, size_t b) -> const Rat& { return j.at(a, b); },
      [&](size_t a, size_t b) -> const Rat& { return r.at(a, b); });
  return JointMatrix::CreateFlat(j.space(), r.cols(), std::move(flat));
}

absl::StatusOr<MarkovMatrix> MultiplyMarkov(const MarkovMatrix& m1,
                                            const MarkovMatrix& m2) {
  if (!SameSpace(m1.space(), m2.space())) {
    return SpaceMismatchError("markov product over different spaces");
  }
  const size_t n = m1.size();
  std::vector<Rat> flat = MatMul(
      n, n, n, [&](size_t a, size_t b) -> const Rat& { return m1.at(a, b); },
      [&](size_t a, size_t b) -> const Rat& { return m2.at(a, b); });
  return MarkovMatrix::CreateFlat(m1.space(), std::move(flat));
}

absl::StatusOr<JointMatrix> JointOfHmm(const Dist& prior, const HmmTensor& h) {
  if (!SameSpace(prior.space(), h.space())) {
    return SpaceMismatchError("prior and tensor over different spaces");
  }
  const size_t n = h.num_states();
  const size_t k = h.num_obs();
  std::vector<Rat> flat(n * k, Rat(0));
  for (const auto& [x, p] : prior.entries()) {
    for (size_t y = 0; y < k; ++y) {
      for (size_t x2 = 0; x2 < n; ++x2) {
        const Rat& v = h.at(x, y, x2);
        if (sgn(v) != 0) flat[x2 * k + y] += p * v;
      }
    }
  }
  return JointMatrix::CreateFlat(h.space(), h.obs(), std::move(flat));
}

HmmTensor FlattenObservations(const HmmTensor& h) {
  std::vector<ObsLabel> obs;
  for (const auto& o : h.obs())
    obs.emplace_back(absl::StrJoin(o.Flatten(), ","));
  const size_t n = h.num_states();
  std::vector<Rat> flat;
  flat.reserve(n * h.num_obs() * n);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < h.num_obs(); ++y) {
      for (size_t x2 = 0; x2 < n; ++x2) flat.push_back(h.at(x, y, x2));
    }
  }
  return HmmTensor::CreateFlat(h.space(), std::move(obs), std::move(flat))
      .value();
}

HmmTensor SortObservations(const HmmTensor& h) {
  std::vector<size_t> order(h.num_obs());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return h.obs()[a] < h.obs()[b]; });
  std::vector<ObsLabel> obs;
  for (size_t y : order) obs.push_back(h.obs()[y]);
  const size_t n = h.num_states();
  std::vector<Rat> flat;
  flat.reserve(n * h.num_obs() * n);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y : order) {
      for (size_t x2 = 0; x2 < n; ++x2) flat.push_back(h.at(x, y, x2));
    }
  }
  return HmmTensor::CreateFlat(h.space(), std::move(obs), std::move(flat))
      .value();
}

}  // namespace hyperflow
