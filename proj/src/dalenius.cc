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

#include "hyperflow/dalenius.h"

#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

SpacePtr ProductSpace(const SpacePtr& x, const SpacePtr& z) {
  std::vector<std::string> labels;
  for (const auto& a : x->labels()) {
    for (const auto& b : z->labels()) labels.push_back(absl::StrCat(a, ",", b));
  }
  return StateSpace::Create(std::move(labels)).value();
}

ChannelMatrix ExtendChannel(const ChannelMatrix& c, const SpacePtr& z) {
  SpacePtr xz = ProductSpace(c.space(), z);
  std::vector<std::vector<Rat>> rows;
  for (size_t x = 0; x < c.num_rows(); ++x) {
    std::vector<Rat> row(c.num_cols());
    for (size_t y = 0; y < c.num_cols(); ++y) row[y] = c.at(x, y);
    for (size_t k = 0; k < z->size(); ++k) rows.push_back(row);
  }
  return ChannelMatrix::Create(xz, c.cols(), rows).value();
}

MarkovMatrix ExtendMarkov(const MarkovMatrix& m, const SpacePtr& z) {
  SpacePtr xz = ProductSpace(m.space(), z);
  const size_t nx = m.size();
  const size_t nz = z->size();
  std::vector<Rat> flat(nx * nz * nx * nz, Rat(0));
  for (size_t x = 0; x < nx; ++x) {
    for (size_t k = 0; k < nz; ++k) {
      for (size_t x2 = 0; x2 < nx; ++x2) {
        flat[(x * nz + k) * (nx * nz) + x2 * nz + k] = m.at(x, x2);
      }
    }
  }
  return MarkovMatrix::CreateFlat(xz, std::move(flat)).value();
}

HmmTensor ExtendTensor(const HmmTensor& h, const SpacePtr& z) {
  SpacePtr xz = ProductSpace(h.space(), z);
  const size_t nx = h.num_states();
  const size_t nz = z->size();
  const size_t k = h.num_obs();
  const size_t n = nx * nz;
  std::vector<Rat> flat(n * k * n, Rat(0));
  for (size_t x = 0; x < nx; ++x) {
    for (size_t zi = 0; zi < nz; ++zi) {
      for (size_t y = 0; y < k; ++y) {
        for (size_t x2 = 0; x2 < nx; ++x2) {
          flat[((x * nz + zi) * k + y) * n + x2 * nz + zi] = h.at(x, y, x2);
        }
      }
    }
  }
  return HmmTensor::CreateFlat(xz, h.obs(), std::move(flat)).value();
}

absl::StatusOr<AbstractHmm> ExtendHmm(const AbstractHmm& h, const SpacePtr& z) {
  switch (h.kind()) {
    case AbstractHmm::Kind::kChannel:
      return DenoteChannel(ExtendChannel(h.channel(), z));
    case AbstractHmm::Kind::kMarkov:
      return DenoteMarkov(ExtendMarkov(h.markov(), z));
    case AbstractHmm::Kind::kStep:
      return DenoteStep(ExtendChannel(h.channel(), z),
                        ExtendMarkov(h.markov(), z));
    case AbstractHmm::Kind::kTensor:
      return DenoteHmm(ExtendTensor(h.tensor(), z));
    case AbstractHmm::Kind::kSeq: {
      ASSIGN_OR_RETURN(AbstractHmm a, ExtendHmm(h.first(), z));
      ASSIGN_OR_RETURN(AbstractHmm b, ExtendHmm(h.second(), z));
      return KleisliCompose(a, b);
    }
    case AbstractHmm::Kind::kFunction:
      break;
  }
  return absl::InvalidArgumentError("cannot extend an opaque program");
}

namespace {

Dist Marginal(const Dist& d, const SpacePtr& target, size_t nz, bool want_x) {
  std::map<size_t, Rat> acc;
  for (const auto& [i, p] : d.entries()) acc[want_x ? i / nz : i % nz] += p;
  return Dist::Unchecked(target,
                         std::vector<SubDist::Entry>(acc.begin(), acc.end()));
}

Hyper Project(const Hyper& h, const SpacePtr& target, size_t nz, bool want_x) {
  std::vector<Hyper::Atom> atoms;
  for (const auto& [inner, w] : h.atoms()) {
    atoms.emplace_back(Marginal(inner, target, nz, want_x), w);
  }
  return Hyper::Unchecked(target, std::move(atoms));
}

}  // namespace

Dist MarginalX(const Dist& d, const SpacePtr& x, const SpacePtr& z) {
  return Marginal(d, x, z->size(), true);
}
Dist MarginalZ(const Dist& d, const SpacePtr& /*x*/, const SpacePtr& z) {
  return Marginal(d, z, z->size(), false);
}
Hyper ProjectX(const Hyper& h, const SpacePtr& x, const SpacePtr& z) {
  return Project(h, x, z->size(), true);
}
Hyper ProjectZ(const Hyper& h, const SpacePtr& /*x*/, const SpacePtr& z) {
  return Project(h, z, z->size(), false);
}

Dist IndependentPrior(const Dist& px, const Dist& pz) {
  SpacePtr xz = ProductSpace(px.space(), pz.space());
  const size_t nz = pz.space()->size();
  std::vector<SubDist::Entry> entries;
  for (const auto& [x, p] : px.entries()) {
    for (const auto& [z, q] : pz.entries())
      entries.emplace_back(x * nz + z, p * q);
  }
  return Dist::Unchecked(xz, std::move(entries));
}

absl::StatusOr<DaleniusResult> DaleniusAnalysis(const ChannelMatrix& c,
                                                const MarkovMatrix& m,
                                                const SpacePtr& z,
                                                const Dist& correlated) {
  if (!SameSpace(c.space(), m.space())) {
    return SpaceMismatchError("channel and markov over different spaces");
  }
  ASSIGN_OR_RETURN(AbstractHmm h, DenoteStep(c, m));
  return DaleniusAnalysis(h, z, correlated);
}

absl::StatusOr<DaleniusResult> DaleniusAnalysis(const AbstractHmm& h,
                                                const SpacePtr& z,
                                                const Dist& correlated) {
  const SpacePtr& x = h.space();
  SpacePtr xz = ProductSpace(x, z);
  if (!SameSpace(correlated.space(), xz)) {
    return SpaceMismatchError("correlated prior is not over X x Z");
  }
  ASSIGN_OR_RETURN(AbstractHmm ext, ExtendHmm(h, z));
  ASSIGN_OR_RETURN(Hyper product, ext.Evaluate(correlated));
  DaleniusResult result{
      product, ProjectZ(product, x, z), ProjectX(product, x, z), {}};
  auto tensor = Materialize(ext);
  if (tensor.ok()) {
    ASSIGN_OR_RETURN(JointMatrix j, JointOfHmm(correlated, *tensor));
    for (size_t y = 0; y < j.num_cols(); ++y) {
      SubDist col = j.Column(y);
      const Rat w = col.Weight();
      if (sgn(w) == 0) continue;
      ASSIGN_OR_RETURN(Dist inner, Normalize(col));
      result.by_observation.push_back({j.cols()[y], w, MarginalZ(inner, x, z)});
    }
  }
  return result;
}

}  // namespace hyperflow
