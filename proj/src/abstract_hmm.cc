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

#include "hyperflow/abstract_hmm.h"

#include <limits>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/random.h"
#include "hyperflow/refinement.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

struct AbstractHmm::Node {
  Kind kind;
  SpacePtr space;
  std::optional<ChannelMatrix> channel;
  std::optional<MarkovMatrix> markov;
  std::optional<HmmTensor> tensor;
  Fn fn;
  std::optional<AbstractHmm> first;
  std::optional<AbstractHmm> second;
};

namespace {

// Collects the normalized columns of a joint given column-by-column as
// sparse vectors; zero columns vanish and equal inners merge.
class HyperAccumulator {
 public:
  explicit HyperAccumulator(SpacePtr space) : space_(std::move(space)) {}

  void AddColumn(std::map<size_t, Rat>& column) {
    Rat w = 0;
    for (const auto& [x, v] : column) w += v;
    if (sgn(w) == 0) return;
    std::vector<SubDist::Entry> entries;
    for (auto& [x, v] : column) {
      if (sgn(v) != 0) entries.emplace_back(x, v / w);
    }
    atoms_.emplace_back(Dist::Unchecked(space_, std::move(entries)), w);
  }

  Hyper Finish() { return Hyper::Unchecked(space_, std::move(atoms_)); }

 private:
  SpacePtr space_;
  std::vector<Hyper::Atom> atoms_;
};

}  // namespace

AbstractHmm::Kind AbstractHmm::kind() const { return node_->kind; }
const SpacePtr& AbstractHmm::space() const { return node_->space; }
const ChannelMatrix& AbstractHmm::channel() const { return *node_->channel; }
const MarkovMatrix& AbstractHmm::markov() const { return *node_->markov; }
const HmmTensor& AbstractHmm::tensor() const { return *node_->tensor; }
const AbstractHmm& AbstractHmm::first() const { return *node_->first; }
const AbstractHmm& AbstractHmm::second() const { return *node_->second; }

absl::StatusOr<Hyper> AbstractHmm::Evaluate(const Dist& prior) const {
  if (!SameSpace(prior.space(), space())) {
    return SpaceMismatchError("prior is over a different state space");
  }
  const Node& n = *node_;
  const size_t ns = space()->size();
  switch (n.kind) {
    case Kind::kChannel: {
      const ChannelMatrix& c = *n.channel;
      HyperAccumulator acc(space());
      for (size_t y = 0; y < c.num_cols(); ++y) {
        std::map<size_t, Rat> col;
        for (const auto& [x, p] : prior.entries()) {
          if (sgn(c.at(x, y)) != 0) col[x] = p * c.at(x, y);
        }
        acc.AddColumn(col);
      }
      return acc.Finish();
    }
    case Kind::kMarkov: {
      const MarkovMatrix& m = *n.markov;
      std::map<size_t, Rat> out;
      for (const auto& [x, p] : prior.entries()) {
        for (size_t x2 = 0; x2 < ns; ++x2) {
          if (sgn(m.at(x, x2)) != 0) out[x2] += p * m.at(x, x2);
        }
      }
      HyperAccumulator acc(space());
      acc.AddColumn(out);
      return acc.Finish();
    }
    case Kind::kStep: {
      const ChannelMatrix& c = *n.channel;
      const MarkovMatrix& m = *n.markov;
      HyperAccumulator acc(space());
      for (size_t y = 0; y < c.num_cols(); ++y) {
        std::map<size_t, Rat> col;
        for (const auto& [x, p] : prior.entries()) {
          if (sgn(c.at(x, y)) == 0) continue;
          const Rat py = p * c.at(x, y);
          for (size_t x2 = 0; x2 < ns; ++x2) {
            if (sgn(m.at(x, x2)) != 0) col[x2] += py * m.at(x, x2);
          }
        }
        acc.AddColumn(col);
      }
      return acc.Finish();
    }
    case Kind::kTensor: {
      const HmmTensor& h = *n.tensor;
      HyperAccumulator acc(space());
      for (size_t y = 0; y < h.num_obs(); ++y) {
        std::map<size_t, Rat> col;
        for (const auto& [x, p] : prior.entries()) {
          for (size_t x2 = 0; x2 < ns; ++x2) {
            if (sgn(h.at(x, y, x2)) != 0) col[x2] += p * h.at(x, y, x2);
          }
        }
        acc.AddColumn(col);
      }
      return acc.Finish();
    }
    case Kind::kFunction: {
      ASSIGN_OR_RETURN(Hyper out, n.fn(prior));
      if (!SameSpace(out.space(), space())) {
        return SpaceMismatchError("function result over a different space");
      }
      return out;
    }
    case Kind::kSeq: {
      ASSIGN_OR_RETURN(Hyper mid, n.first->Evaluate(prior));
      std::vector<Hyper::Atom> atoms;
      for (const auto& [inner, w] : mid.atoms()) {
        ASSIGN_OR_RETURN(Hyper part, n.second->Evaluate(inner));
        for (const auto& [d, q] : part.atoms()) atoms.emplace_back(d, w * q);
      }
      return Hyper::Unchecked(space(), std::move(atoms));
    }
  }
  return absl::InternalError("unknown node kind");
}

std::optional<size_t> AbstractHmm::ObservationCount() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kChannel:
    case Kind::kStep:
      return n.channel->num_cols();
    case Kind::kMarkov:
      return 1;
    case Kind::kTensor:
      return n.tensor->num_obs();
    case Kind::kFunction:
      return std::nullopt;
    case Kind::kSeq: {
      auto a = n.first->ObservationCount();
      auto b = n.second->ObservationCount();
      if (!a || !b) return std::nullopt;
      if (*a != 0 && *b > std::numeric_limits<size_t>::max() / *a) {
        return std::numeric_limits<size_t>::max();
      }
      return *a * *b;
    }
  }
  return std::nullopt;
}

AbstractHmm AbstractHmm::FromFunction(SpacePtr space, Fn fn) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kFunction;
  node->space = std::move(space);
  node->fn = std::move(fn);
  return AbstractHmm(std::move(node));
}

absl::StatusOr<Hyper> AbstractJoint(const JointMatrix& j) {
  HyperAccumulator acc(j.space());
  for (size_t y = 0; y < j.num_cols(); ++y) {
    std::map<size_t, Rat> col;
    for (size_t x = 0; x < j.num_rows(); ++x) {
      if (sgn(j.at(x, y)) != 0) col[x] = j.at(x, y);
    }
    acc.AddColumn(col);
  }
  return acc.Finish();
}

AbstractHmm DenoteChannel(const ChannelMatrix& c) {
  auto node = std::make_shared<AbstractHmm::Node>();
  node->kind = AbstractHmm::Kind::kChannel;
  node->space = c.space();
  node->channel = c;
  return AbstractHmm(std::move(node));
}

AbstractHmm DenoteMarkov(const MarkovMatrix& m) {
  auto node = std::make_shared<AbstractHmm::Node>();
  node->kind = AbstractHmm::Kind::kMarkov;
  node->space = m.space();
  node->markov = m;
  return AbstractHmm(std::move(node));
}

AbstractHmm DenoteHmm(const HmmTensor& h) {
  auto node = std::make_shared<AbstractHmm::Node>();
  node->kind = AbstractHmm::Kind::kTensor;
  node->space = h.space();
  node->tensor = h;
  return AbstractHmm(std::move(node));
}

absl::StatusOr<AbstractHmm> DenoteStep(const ChannelMatrix& c,
                                       const MarkovMatrix& m) {
  if (!SameSpace(c.space(), m.space())) {
    return SpaceMismatchError("channel and markov over different spaces");
  }
  auto node = std::make_shared<AbstractHmm::Node>();
  node->kind = AbstractHmm::Kind::kStep;
  node->space = c.space();
  node->channel = c;
  node->markov = m;
  return AbstractHmm(std::move(node));
}

AbstractHmm IdentityHmm(const SpacePtr& space) {
  return DenoteMarkov(MarkovMatrix::Identity(space));
}

absl::StatusOr<AbstractHmm> KleisliCompose(const AbstractHmm& h1,
                                           const AbstractHmm& h2) {
  if (!SameSpace(h1.space(), h2.space())) {
    return SpaceMismatchError("composed programs over different spaces");
  }
  auto node = std::make_shared<AbstractHmm::Node>();
  node->kind = AbstractHmm::Kind::kSeq;
  node->space = h1.space();
  node->first = h1;
  node->second = h2;
  return AbstractHmm(std::move(node));
}

absl::StatusOr<HmmTensor> Materialize(const AbstractHmm& h, size_t bound) {
  auto count = h.ObservationCount();
  if (!count) return NotMaterializedError("program has an opaque component");
  if (*count > bound) {
    return NotMaterializedError(
        absl::StrCat("observation product ", *count, " exceeds bound ", bound));
  }
  switch (h.kind()) {
    case AbstractHmm::Kind::kChannel:
      return ChannelToTensor(h.channel());
    case AbstractHmm::Kind::kMarkov:
      return MarkovToTensor(h.markov());
    case AbstractHmm::Kind::kStep:
      return MakeStep(h.channel(), h.markov());
    case AbstractHmm::Kind::kTensor:
      return h.tensor();
    case AbstractHmm::Kind::kSeq: {
      ASSIGN_OR_RETURN(HmmTensor a, Materialize(h.first(), bound));
      ASSIGN_OR_RETURN(HmmTensor b, Materialize(h.second(), bound));
      return ComposeTensors(a, b);
    }
    case AbstractHmm::Kind::kFunction:
      break;
  }
  return NotMaterializedError("program has an opaque component");
}

absl::StatusOr<bool> AgreeOn(const AbstractHmm& h1, const AbstractHmm& h2,
                             const std::vector<Dist>& priors) {
  if (!SameSpace(h1.space(), h2.space())) {
    return SpaceMismatchError("compared programs over different spaces");
  }
  for (const Dist& pi : priors) {
    ASSIGN_OR_RETURN(Hyper a, h1.Evaluate(pi));
    ASSIGN_OR_RETURN(Hyper b, h2.Evaluate(pi));
    if (a != b) return false;
  }
  return true;
}

absl::StatusOr<bool> SuperLinearAt(const AbstractHmm& h, const Dist& pi1,
                                   const Dist& pi2, const Rat& p) {
  ASSIGN_OR_RETURN(Hyper a, h.Evaluate(pi1));
  ASSIGN_OR_RETURN(Hyper b, h.Evaluate(pi2));
  ASSIGN_OR_RETURN(Hyper lhs, WeightedSum(a, b, p));
  ASSIGN_OR_RETURN(Dist mixed, WeightedSum(pi1, pi2, p));
  ASSIGN_OR_RETURN(Hyper rhs, h.Evaluate(mixed));
  ASSIGN_OR_RETURN(RefinementResult r, CheckRefinement(lhs, rhs));
  return r.refines();
}

absl::StatusOr<SuperLinearReport> CheckSuperLinear(const AbstractHmm& h,
                                                   int trials,
                                                   std::mt19937_64& rng) {
  SuperLinearReport report;
  for (int t = 0; t < trials; ++t) {
    Dist pi1 = RandomDist(rng, h.space());
    Dist pi2 = RandomDist(rng, h.space());
    Rat p = RandomProbability(rng);
    ASSIGN_OR_RETURN(bool ok, SuperLinearAt(h, pi1, pi2, p));
    ++report.trials;
    if (!ok) report.failures.push_back({pi1, pi2, p});
  }
  return report;
}

}  // namespace hyperflow
