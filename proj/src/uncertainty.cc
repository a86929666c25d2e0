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

#include "hyperflow/uncertainty.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/random.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

absl::StatusOr<LossFunction> LossFunction::Create(
    SpacePtr space, std::vector<std::string> indices,
    std::vector<std::vector<Rat>> table, std::string name) {
  if (space == nullptr) return absl::InvalidArgumentError("null state space");
  if (indices.empty()) {
    return absl::InvalidArgumentError("loss function without indices");
  }
  if (table.size() != indices.size()) {
    return DimensionMismatchError("loss table rows vs indices");
  }
  std::set<std::string> seen;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (!seen.insert(indices[i]).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate loss index '", indices[i], "'"));
    }
    if (table[i].size() != space->size()) {
      return DimensionMismatchError(
          absl::StrCat("loss row '", indices[i], "' has ", table[i].size(),
                       " entries for ", space->size(), " states"));
    }
    for (const Rat& v : table[i]) {
      if (sgn(v) < 0) {
        return BadProbabilityError(
            absl::StrCat("negative loss in row '", indices[i], "'"));
      }
    }
  }
  return LossFunction(std::move(space), std::move(indices), std::move(table),
                      std::move(name));
}

absl::StatusOr<Rat> EvalLossMeasure(const LossFunction& l, const Dist& rho) {
  if (!SameSpace(l.space(), rho.space())) {
    return SpaceMismatchError("loss function and distribution spaces differ");
  }
  Rat best;
  for (size_t i = 0; i < l.size(); ++i) {
    Rat v = 0;
    for (const auto& [x, p] : rho.entries()) v += p * l.row(i)[x];
    if (i == 0 || v < best) best = std::move(v);
  }
  return best;
}

double ShannonEntropy(const Dist& rho) {
  double h = 0;
  for (const auto& [x, p] : rho.entries()) {
    const double q = ToDouble(p);
    h -= q * std::log2(q);
  }
  return h;
}

Rat BayesVulnerability(const Dist& rho) {
  Rat best = 0;
  for (const auto& [x, p] : rho.entries()) {
    if (p > best) best = p;
  }
  return best;
}

Rat GuessingEntropy(const Dist& rho) {
  std::vector<Rat> ps;
  for (const auto& [x, p] : rho.entries()) ps.push_back(p);
  std::sort(ps.begin(), ps.end(),
            [](const Rat& a, const Rat& b) { return a > b; });
  Rat g = 0;
  for (size_t k = 0; k < ps.size(); ++k)
    g += Rat(static_cast<long>(k + 1)) * ps[k];
  return g;
}

UncertaintyMeasure UncertaintyMeasure::Loss(LossFunction l) {
  UncertaintyMeasure u(Kind::kLoss);
  u.loss_ = std::move(l);
  return u;
}
UncertaintyMeasure UncertaintyMeasure::Shannon() {
  return UncertaintyMeasure(Kind::kShannon);
}
UncertaintyMeasure UncertaintyMeasure::BayesComplement() {
  return UncertaintyMeasure(Kind::kBayesComplement);
}
UncertaintyMeasure UncertaintyMeasure::Guessing() {
  return UncertaintyMeasure(Kind::kGuessing);
}

std::string UncertaintyMeasure::name() const {
  switch (kind_) {
    case Kind::kLoss:
      return absl::StrCat("loss:", loss_->name());
    case Kind::kShannon:
      return "shannon";
    case Kind::kBayesComplement:
      return "bayes";
    case Kind::kGuessing:
      return "guessing";
  }
  return "";
}

absl::StatusOr<Rat> UncertaintyMeasure::Exact(const Dist& rho) const {
  switch (kind_) {
    case Kind::kLoss:
      return EvalLossMeasure(*loss_, rho);
    case Kind::kShannon:
      return absl::UnimplementedError("Shannon entropy has no exact value");
    case Kind::kBayesComplement:
      return Rat(1) - BayesVulnerability(rho);
    case Kind::kGuessing:
      return GuessingEntropy(rho);
  }
  return absl::InternalError("unknown measure");
}

absl::StatusOr<double> UncertaintyMeasure::Approx(const Dist& rho) const {
  if (kind_ == Kind::kShannon) return ShannonEntropy(rho);
  ASSIGN_OR_RETURN(Rat v, Exact(rho));
  return ToDouble(v);
}

absl::StatusOr<Rat> Wp(const AbstractHmm& h, const UncertaintyMeasure& u,
                       const Dist& prior) {
  if (!u.exact()) {
    return absl::UnimplementedError("exact wp needs an exact measure");
  }
  if (u.kind() == UncertaintyMeasure::Kind::kLoss &&
      !SameSpace(u.loss().space(), h.space())) {
    return SpaceMismatchError("loss function and program spaces differ");
  }
  ASSIGN_OR_RETURN(Hyper out, h.Evaluate(prior));
  Rat total = 0;
  for (const auto& [inner, w] : out.atoms()) {
    ASSIGN_OR_RETURN(Rat v, u.Exact(inner));
    total += w * v;
  }
  return total;
}

absl::StatusOr<double> WpApprox(const AbstractHmm& h,
                                const UncertaintyMeasure& u,
                                const Dist& prior) {
  ASSIGN_OR_RETURN(Hyper out, h.Evaluate(prior));
  double total = 0;
  for (const auto& [inner, w] : out.atoms()) {
    ASSIGN_OR_RETURN(double v, u.Approx(inner));
    total += ToDouble(w) * v;
  }
  return total;
}

namespace {

struct Strategy {
  std::string label;
  std::vector<Rat> values;  // indexed by initial state
};

// Drops strategies that are pointwise >= another; among equal vectors the
// first one is kept.
std::vector<Strategy> Prune(std::vector<Strategy> in) {
  std::vector<bool> keep(in.size(), false);
  for (size_t a = 0; a < in.size(); ++a) {
    bool dominated = false;
    for (size_t b = 0; b < in.size() && !dominated; ++b) {
      if (a == b) continue;
      bool le = true;
      bool strict = false;
      for (size_t x = 0; x < in[a].values.size(); ++x) {
        const int c = cmp(in[b].values[x], in[a].values[x]);
        if (c > 0) {
          le = false;
          break;
        }
        if (c < 0) strict = true;
      }
      // b <= a pointwise; equal vectors resolve to the lower position.
      if (le && (strict || b < a)) dominated = true;
    }
    keep[a] = !dominated;
  }
  std::vector<Strategy> out;
  for (size_t a = 0; a < in.size(); ++a) {
    if (keep[a]) out.push_back(std::move(in[a]));
  }
  return out;
}

}  // namespace

absl::StatusOr<LossFunction> WpLossTensor(const HmmTensor& h,
                                          const LossFunction& l) {
  if (!SameSpace(h.space(), l.space())) {
    return SpaceMismatchError("loss function and tensor spaces differ");
  }
  const size_t n = h.num_states();
  const bool single = h.num_obs() == 1;
  std::vector<Strategy> acc = {{"", std::vector<Rat>(n, Rat(0))}};
  for (size_t y = 0; y < h.num_obs(); ++y) {
    std::vector<Strategy> options;
    for (size_t i = 0; i < l.size(); ++i) {
      Strategy s;
      s.label = single
                    ? l.indices()[i]
                    : absl::StrCat(h.obs()[y].ToString(), "->", l.indices()[i]);
      s.values.assign(n, Rat(0));
      for (size_t x = 0; x < n; ++x) {
        for (size_t x2 = 0; x2 < n; ++x2) {
          const Rat& v = h.at(x, y, x2);
          if (sgn(v) != 0) s.values[x] += v * l.row(i)[x2];
        }
      }
      options.push_back(std::move(s));
    }
    options = Prune(std::move(options));
    std::vector<Strategy> next;
    next.reserve(acc.size() * options.size());
    for (const Strategy& a : acc) {
      for (const Strategy& o : options) {
        Strategy s;
        s.label =
            a.label.empty() ? o.label : absl::StrCat(a.label, ",", o.label);
        s.values = a.values;
        for (size_t x = 0; x < n; ++x) s.values[x] += o.values[x];
        next.push_back(std::move(s));
      }
    }
    acc = Prune(std::move(next));
  }
  std::vector<std::string> indices;
  std::vector<std::vector<Rat>> table;
  for (Strategy& s : acc) {
    indices.push_back(std::move(s.label));
    table.push_back(std::move(s.values));
  }
  return LossFunction::Create(
      h.space(), std::move(indices), std::move(table),
      l.name().empty() ? "" : absl::StrCat("wp_", l.name()));
}

absl::StatusOr<LossFunction> WpLoss(const AbstractHmm& h, const LossFunction& l,
                                    size_t bound) {
  ASSIGN_OR_RETURN(HmmTensor t, Materialize(h, bound));
  return WpLossTensor(t, l);
}

absl::StatusOr<bool> TransformerComposeAt(const AbstractHmm& h1,
                                          const AbstractHmm& h2,
                                          const LossFunction& l,
                                          const Dist& prior) {
  ASSIGN_OR_RETURN(AbstractHmm seq, KleisliCompose(h1, h2));
  const UncertaintyMeasure u = UncertaintyMeasure::Loss(l);
  ASSIGN_OR_RETURN(Rat lhs, Wp(seq, u, prior));
  auto pre = WpLoss(h2, l);
  if (pre.ok()) {
    ASSIGN_OR_RETURN(Rat rhs, Wp(h1, UncertaintyMeasure::Loss(*pre), prior));
    return lhs == rhs;
  }
  if (!absl::IsResourceExhausted(pre.status())) return pre.status();
  ASSIGN_OR_RETURN(Hyper mid, h1.Evaluate(prior));
  Rat rhs = 0;
  for (const auto& [inner, w] : mid.atoms()) {
    ASSIGN_OR_RETURN(Rat v, Wp(h2, u, inner));
    rhs += w * v;
  }
  return lhs == rhs;
}

absl::StatusOr<TrialReport> TransformerComposeCheck(const AbstractHmm& h1,
                                                    const AbstractHmm& h2,
                                                    int trials,
                                                    std::mt19937_64& rng) {
  TrialReport report;
  for (int t = 0; t < trials; ++t) {
    const size_t k = 1 + rng() % 3;
    LossFunction l = RandomLoss(rng, h1.space(), k);
    Dist prior = RandomDist(rng, h1.space());
    ASSIGN_OR_RETURN(bool ok, TransformerComposeAt(h1, h2, l, prior));
    ++report.trials;
    if (!ok) ++report.failures;
  }
  return report;
}

absl::StatusOr<LeakageReport> Leakage(const AbstractHmm& h, const Dist& prior,
                                      const UncertaintyMeasure& u) {
  LeakageReport r;
  if (u.exact()) {
    ASSIGN_OR_RETURN(Rat before, u.Exact(prior));
    ASSIGN_OR_RETURN(Rat after, Wp(h, u, prior));
    r.leak_exact = before - after;
    r.prior = ToDouble(before);
    r.posterior = ToDouble(after);
    r.leak = ToDouble(*r.leak_exact);
    r.prior_exact = std::move(before);
    r.posterior_exact = std::move(after);
    return r;
  }
  ASSIGN_OR_RETURN(r.prior, u.Approx(prior));
  ASSIGN_OR_RETURN(r.posterior, WpApprox(h, u, prior));
  r.leak = r.prior - r.posterior;
  return r;
}

absl::StatusOr<LossFunction> SkewedLoss(const Dist& prior,
                                        const LossFunction& l) {
  if (!SameSpace(prior.space(), l.space())) {
    return SpaceMismatchError("skewing prior and loss spaces differ");
  }
  std::vector<std::vector<Rat>> table = l.table();
  const std::vector<Rat> p = prior.Dense();
  for (auto& row : table) {
    for (size_t x = 0; x < row.size(); ++x) row[x] *= p[x];
  }
  return LossFunction::Create(l.space(), l.indices(), std::move(table),
                              l.name());
}

absl::StatusOr<LossFunction> CombineLoss(const Rat& a, const LossFunction& l1,
                                         const Rat& b, const LossFunction& l2) {
  if (!SameSpace(l1.space(), l2.space())) {
    return SpaceMismatchError("combined loss functions over different spaces");
  }
  if (sgn(a) < 0 || sgn(b) < 0) {
    return BadProbabilityError("loss combination needs nonnegative weights");
  }
  std::vector<std::string> indices;
  std::vector<std::vector<Rat>> table;
  for (size_t i = 0; i < l1.size(); ++i) {
    for (size_t j = 0; j < l2.size(); ++j) {
      indices.push_back(absl::StrCat(l1.indices()[i], "&", l2.indices()[j]));
      std::vector<Rat> row(l1.space()->size());
      for (size_t x = 0; x < row.size(); ++x) {
        row[x] = a * l1.row(i)[x] + b * l2.row(j)[x];
      }
      table.push_back(std::move(row));
    }
  }
  return LossFunction::Create(l1.space(), std::move(indices), std::move(table));
}

LossFunction ConstantLoss(const SpacePtr& space, const Rat& value) {
  return LossFunction::Create(space, {"c"},
                              {std::vector<Rat>(space->size(), value)})
      .value();
}

absl::StatusOr<bool> MultiplicativeAt(const AbstractHmm& h, const Dist& pi1,
                                      const Dist& pi2, const LossFunction& l) {
  ASSIGN_OR_RETURN(LossFunction s1, SkewedLoss(pi1, l));
  ASSIGN_OR_RETURN(LossFunction s2, SkewedLoss(pi2, l));
  ASSIGN_OR_RETURN(Rat a, Wp(h, UncertaintyMeasure::Loss(s1), pi2));
  ASSIGN_OR_RETURN(Rat b, Wp(h, UncertaintyMeasure::Loss(s2), pi1));
  return a == b;
}

absl::StatusOr<TrialReport> IsMultiplicative(const AbstractHmm& h, int trials,
                                             std::mt19937_64& rng) {
  TrialReport report;
  for (int t = 0; t < trials; ++t) {
    Dist pi1 = RandomDist(rng, h.space());
    Dist pi2 = RandomDist(rng, h.space());
    LossFunction l = RandomLoss(rng, h.space(), 1 + rng() % 3);
    ASSIGN_OR_RETURN(bool ok, MultiplicativeAt(h, pi1, pi2, l));
    ++report.trials;
    if (!ok) ++report.failures;
  }
  return report;
}

}  // namespace hyperflow
