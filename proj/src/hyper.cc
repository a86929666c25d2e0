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

#include "hyperflow/hyper.h"

#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {
namespace {

absl::Status CheckAtoms(const SpacePtr& space,
                        const std::vector<Hyper::Atom>& atoms) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  for (const auto& [inner, w] : atoms) {
    if (!SameSpace(inner.space(), space)) {
      return SpaceMismatchError("inner over a different state space");
    }
    if (sgn(w) < 0) {
      return BadProbabilityError(
          absl::StrCat("negative outer weight ", FormatRat(w)));
    }
  }
  return absl::OkStatus();
}

std::string AtomsString(const std::vector<Hyper::Atom>& atoms) {
  std::vector<std::string> parts;
  for (const auto& [inner, w] : atoms) {
    parts.push_back(absl::StrCat(inner.DebugString(), "@", FormatRat(w)));
  }
  return absl::StrCat("[", absl::StrJoin(parts, ", "), "]");
}

}  // namespace

absl::StatusOr<SubHyper> SubHyper::Create(SpacePtr space,
                                          std::vector<Atom> atoms) {
  RETURN_IF_ERROR(CheckAtoms(space, atoms));
  FiniteMeasure<Dist> m(std::move(atoms));
  if (m.Weight() > 1) {
    return BadProbabilityError(
        absl::StrCat("sub-hyper weight ", FormatRat(m.Weight()), " exceeds 1"));
  }
  return SubHyper(std::move(space), std::move(m));
}

SubHyper SubHyper::Empty(SpacePtr space) {
  return SubHyper(std::move(space), FiniteMeasure<Dist>());
}

std::string SubHyper::DebugString() const { return AtomsString(atoms()); }

absl::StatusOr<Hyper> Hyper::Create(SpacePtr space, std::vector<Atom> atoms) {
  RETURN_IF_ERROR(CheckAtoms(space, atoms));
  FiniteMeasure<Dist> m(std::move(atoms));
  if (m.Weight() != 1) {
    return BadProbabilityError(
        absl::StrCat("outer weights sum to ", FormatRat(m.Weight())));
  }
  return Hyper(std::move(space), std::move(m));
}

absl::StatusOr<Hyper> Hyper::FromSubHypers(SpacePtr space,
                                           const std::vector<SubHyper>& parts) {
  std::vector<Atom> atoms;
  for (const SubHyper& part : parts) {
    atoms.insert(atoms.end(), part.atoms().begin(), part.atoms().end());
  }
  return Create(std::move(space), std::move(atoms));
}

Hyper Hyper::PointHyper(const Dist& d) {
  return Hyper(d.space(), FiniteMeasure<Dist>({{d, Rat(1)}}));
}

Hyper Hyper::Unchecked(SpacePtr space, std::vector<Atom> atoms) {
  return Hyper(std::move(space), FiniteMeasure<Dist>(std::move(atoms)));
}

std::string Hyper::DebugString() const { return AtomsString(atoms()); }

absl::StatusOr<HyperWitness> HyperWitness::Create(SpacePtr space,
                                                  std::vector<Atom> atoms) {
  for (const auto& [h, w] : atoms) {
    if (!SameSpace(h.space(), space)) {
      return SpaceMismatchError("hyper over a different state space");
    }
    if (sgn(w) < 0) return BadProbabilityError("negative witness weight");
  }
  FiniteMeasure<Hyper> m(std::move(atoms));
  if (m.Weight() != 1) {
    return BadProbabilityError(
        absl::StrCat("witness weights sum to ", FormatRat(m.Weight())));
  }
  return HyperWitness(std::move(space), std::move(m));
}

std::string HyperWitness::DebugString() const {
  std::vector<std::string> parts;
  for (const auto& [h, w] : atoms()) {
    parts.push_back(absl::StrCat(h.DebugString(), "@", FormatRat(w)));
  }
  return absl::StrCat("<", absl::StrJoin(parts, ", "), ">");
}

Hyper PointHyper(const Dist& d) { return Hyper::PointHyper(d); }

SubHyper SubPoint(const SubDist& d) {
  const Rat w = d.Weight();
  if (sgn(w) == 0) return SubHyper::Empty(d.space());
  std::vector<SubDist::Entry> entries;
  for (const auto& [i, p] : d.entries()) entries.emplace_back(i, p / w);
  return *SubHyper::Create(
      d.space(), {{Dist::Unchecked(d.space(), std::move(entries)), w}});
}

Dist Avg(const Hyper& h) {
  std::map<size_t, Rat> acc;
  for (const auto& [inner, w] : h.atoms()) {
    for (const auto& [i, p] : inner.entries()) acc[i] += w * p;
  }
  std::vector<SubDist::Entry> entries(acc.begin(), acc.end());
  return Dist::Unchecked(h.space(), std::move(entries));
}

Hyper Avg(const HyperWitness& w) {
  std::vector<Hyper::Atom> atoms;
  for (const auto& [h, p] : w.atoms()) {
    for (const auto& [inner, q] : h.atoms()) atoms.emplace_back(inner, p * q);
  }
  return Hyper::Unchecked(w.space(), std::move(atoms));
}

absl::StatusOr<Hyper> PushForward(const DistMap& f, const Hyper& h) {
  std::vector<Hyper::Atom> atoms;
  SpacePtr space;
  for (const auto& [inner, w] : h.atoms()) {
    Dist image = f(inner);
    if (space == nullptr) {
      space = image.space();
    } else if (!SameSpace(space, image.space())) {
      return SpaceMismatchError("push-forward images over different spaces");
    }
    atoms.emplace_back(std::move(image), w);
  }
  return Hyper::Unchecked(space, std::move(atoms));
}

Hyper PushForwardAvg(const HyperWitness& w) {
  std::vector<Hyper::Atom> atoms;
  for (const auto& [h, p] : w.atoms()) atoms.emplace_back(Avg(h), p);
  return Hyper::Unchecked(w.space(), std::move(atoms));
}

HyperWitness PushForwardPoint(const Hyper& h) {
  std::vector<HyperWitness::Atom> atoms;
  for (const auto& [inner, w] : h.atoms()) {
    atoms.emplace_back(PointHyper(inner), w);
  }
  return *HyperWitness::Create(h.space(), std::move(atoms));
}

Rat Expect(const Hyper& h, const std::function<Rat(const Dist&)>& u) {
  Rat total = 0;
  for (const auto& [inner, w] : h.atoms()) total += w * u(inner);
  return total;
}

double ExpectDouble(const Hyper& h,
                    const std::function<double(const Dist&)>& u) {
  double total = 0;
  for (const auto& [inner, w] : h.atoms()) total += ToDouble(w) * u(inner);
  return total;
}

absl::StatusOr<Hyper> WeightedSum(const Hyper& a, const Hyper& b,
                                  const Rat& p) {
  if (sgn(p) < 0 || p > 1) {
    return BadProbabilityError(absl::StrCat("p = ", FormatRat(p)));
  }
  if (!SameSpace(a.space(), b.space())) {
    return SpaceMismatchError("weighted sum of hypers over different spaces");
  }
  const Rat q = 1 - p;
  std::vector<Hyper::Atom> atoms;
  for (const auto& [inner, w] : a.atoms()) atoms.emplace_back(inner, p * w);
  for (const auto& [inner, w] : b.atoms()) atoms.emplace_back(inner, q * w);
  return Hyper::Unchecked(a.space(), std::move(atoms));
}

}  // namespace hyperflow
