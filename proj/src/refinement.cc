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

#include "hyperflow/refinement.h"

#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/lp.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {
namespace {

absl::StatusOr<Rat> ExpectLoss(const LossFunction& l, const Hyper& h) {
  Rat total = 0;
  for (const auto& [inner, w] : h.atoms()) {
    ASSIGN_OR_RETURN(Rat v, EvalLossMeasure(l, inner));
    total += w * v;
  }
  return total;
}

// Fallback separator search: loss functions with one or two rows drawn from
// the 0/1 vectors over the state space (small spaces only).
absl::StatusOr<std::optional<LossFunction>> SearchVertexSeparator(
    const Hyper& spec, const Hyper& impl) {
  const size_t n = spec.space()->size();
  if (n > 6) return std::optional<LossFunction>();
  std::vector<std::vector<Rat>> vertices;
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    std::vector<Rat> row(n);
    for (size_t x = 0; x < n; ++x) row[x] = (mask >> x) & 1 ? 1 : 0;
    vertices.push_back(std::move(row));
  }
  for (size_t a = 0; a < vertices.size(); ++a) {
    for (size_t b = a; b < vertices.size(); ++b) {
      std::vector<std::vector<Rat>> table = {vertices[a]};
      std::vector<std::string> idx = {"v0"};
      if (b != a) {
        table.push_back(vertices[b]);
        idx.push_back("v1");
      }
      ASSIGN_OR_RETURN(
          LossFunction l,
          LossFunction::Create(spec.space(), idx, table, "separator"));
      ASSIGN_OR_RETURN(bool sep, Separates(l, spec, impl));
      if (sep) return std::optional<LossFunction>(std::move(l));
    }
  }
  return std::optional<LossFunction>();
}

}  // namespace

absl::StatusOr<RefinementMatrix> RefinementMatrix::Create(
    std::vector<Dist> rows, std::vector<Dist> cols,
    std::vector<std::vector<Rat>> entries) {
  if (entries.size() != rows.size()) {
    return DimensionMismatchError("refinement matrix row count");
  }
  for (const auto& row : entries) {
    if (row.size() != cols.size()) {
      return DimensionMismatchError("refinement matrix column count");
    }
    Rat sum = 0;
    for (const Rat& v : row) {
      if (sgn(v) < 0) return NotStochasticError("negative refinement entry");
      sum += v;
    }
    if (sum != 1) {
      return NotStochasticError(
          absl::StrCat("refinement row sums to ", FormatRat(sum)));
    }
  }
  return RefinementMatrix(std::move(rows), std::move(cols), std::move(entries));
}

JointMatrix HyperToJoint(const Hyper& h) {
  const size_t n = h.space()->size();
  const size_t k = h.size();
  std::vector<ObsLabel> cols;
  std::vector<Rat> flat(n * k, Rat(0));
  for (size_t s = 0; s < k; ++s) {
    cols.emplace_back(absl::StrCat("c", s));
    const auto& [inner, w] = h.atoms()[s];
    for (const auto& [x, p] : inner.entries()) flat[x * k + s] = w * p;
  }
  return JointMatrix::CreateFlat(h.space(), std::move(cols), std::move(flat))
      .value();
}

absl::StatusOr<bool> Separates(const LossFunction& l, const Hyper& spec,
                               const Hyper& impl) {
  ASSIGN_OR_RETURN(Rat es, ExpectLoss(l, spec));
  ASSIGN_OR_RETURN(Rat ei, ExpectLoss(l, impl));
  return es > ei;
}

absl::StatusOr<RefinementResult> CheckRefinement(const Hyper& spec,
                                                 const Hyper& impl) {
  if (!SameSpace(spec.space(), impl.space())) {
    return SpaceMismatchError("refinement between different state spaces");
  }
  const size_t n = spec.space()->size();
  const size_t ks = spec.size();
  const size_t ki = impl.size();
  if (spec == impl) {
    std::vector<Dist> inners;
    for (const auto& atom : spec.atoms()) inners.push_back(atom.first);
    std::vector<std::vector<Rat>> id(ks, std::vector<Rat>(ks));
    for (size_t s = 0; s < ks; ++s) id[s][s] = 1;
    ASSIGN_OR_RETURN(RefinementMatrix m,
                     RefinementMatrix::Create(inners, inners, std::move(id)));
    ASSIGN_OR_RETURN(HyperWitness w, MatrixWitnessToHyperWitness(spec, m));
    RefinementResult result;
    result.verdict = RefinementResult::Verdict::kRefines;
    result.matrix = std::move(m);
    result.witness = std::move(w);
    return result;
  }
  const JointMatrix js = HyperToJoint(spec);
  const JointMatrix ji = HyperToJoint(impl);

  // Variables v[s*ki + i] = R[s][i]. Rows: (x, i) equalities, then row sums.
  RatMatrix a(n * ki + ks, std::vector<Rat>(ks * ki, Rat(0)));
  std::vector<Rat> b(n * ki + ks, Rat(0));
  for (size_t x = 0; x < n; ++x) {
    for (size_t i = 0; i < ki; ++i) {
      for (size_t s = 0; s < ks; ++s) a[x * ki + i][s * ki + i] = js.at(x, s);
      b[x * ki + i] = ji.at(x, i);
    }
  }
  for (size_t s = 0; s < ks; ++s) {
    for (size_t i = 0; i < ki; ++i) a[n * ki + s][s * ki + i] = 1;
    b[n * ki + s] = 1;
  }
  ASSIGN_OR_RETURN(LpFeasibility lp, LpFeasible(a, b));

  std::vector<Dist> rows, cols;
  for (const auto& atom : spec.atoms()) rows.push_back(atom.first);
  for (const auto& atom : impl.atoms()) cols.push_back(atom.first);

  RefinementResult result;
  if (lp.feasible()) {
    std::vector<std::vector<Rat>> r(ks, std::vector<Rat>(ki));
    for (size_t s = 0; s < ks; ++s) {
      for (size_t i = 0; i < ki; ++i) r[s][i] = (*lp.solution)[s * ki + i];
    }
    ASSIGN_OR_RETURN(RefinementMatrix m,
                     RefinementMatrix::Create(rows, cols, std::move(r)));
    ASSIGN_OR_RETURN(HyperWitness w, MatrixWitnessToHyperWitness(spec, m));
    result.verdict = RefinementResult::Verdict::kRefines;
    result.matrix = std::move(m);
    result.witness = std::move(w);
    return result;
  }

  // Farkas certificate c: alpha[x][i] on the equalities, beta[s] on the row
  // sums. With l.i.x = alpha[x][i] the certificate gives
  // E_spec U_l >= -sum(beta) > E_impl U_l. Shift entries to be nonnegative.
  const std::vector<Rat>& c = *lp.certificate;
  Rat shift = 0;
  for (size_t k = 0; k < n * ki; ++k) {
    if (c[k] < -shift) shift = -c[k];
  }
  std::vector<std::string> indices;
  std::vector<std::vector<Rat>> table;
  for (size_t i = 0; i < ki; ++i) {
    indices.push_back(absl::StrCat("c", i));
    std::vector<Rat> row(n);
    for (size_t x = 0; x < n; ++x) row[x] = c[x * ki + i] + shift;
    table.push_back(std::move(row));
  }
  ASSIGN_OR_RETURN(LossFunction l,
                   LossFunction::Create(spec.space(), std::move(indices),
                                        std::move(table), "separator"));
  ASSIGN_OR_RETURN(bool sep, Separates(l, spec, impl));
  if (!sep) {
    ASSIGN_OR_RETURN(std::optional<LossFunction> found,
                     SearchVertexSeparator(spec, impl));
    if (!found) {
      return absl::InternalError("no verified separating loss function");
    }
    l = std::move(*found);
  }
  result.verdict = RefinementResult::Verdict::kNotRefines;
  result.separator = std::move(l);
  return result;
}

absl::StatusOr<bool> VerifyRefinementMatrix(const Hyper& spec,
                                            const Hyper& impl,
                                            const RefinementMatrix& r) {
  if (r.rows().size() != spec.size() || r.cols().size() != impl.size()) {
    return IndexMismatchError("refinement matrix shape");
  }
  for (size_t s = 0; s < spec.size(); ++s) {
    if (r.rows()[s] != spec.atoms()[s].first) {
      return IndexMismatchError("row labels are not the inners of Delta_S");
    }
  }
  for (size_t i = 0; i < impl.size(); ++i) {
    if (r.cols()[i] != impl.atoms()[i].first) {
      return IndexMismatchError("column labels are not the inners of Delta_I");
    }
  }
  const JointMatrix js = HyperToJoint(spec);
  const JointMatrix ji = HyperToJoint(impl);
  for (size_t x = 0; x < js.num_rows(); ++x) {
    for (size_t i = 0; i < impl.size(); ++i) {
      Rat v = 0;
      for (size_t s = 0; s < spec.size(); ++s) v += js.at(x, s) * r.at(s, i);
      if (v != ji.at(x, i)) return false;
    }
  }
  return true;
}

absl::StatusOr<HyperWitness> MatrixWitnessToHyperWitness(
    const Hyper& spec, const RefinementMatrix& r) {
  if (r.rows().size() != spec.size()) {
    return IndexMismatchError("R rows do not match the inners of Delta_S");
  }
  for (size_t s = 0; s < spec.size(); ++s) {
    if (r.rows()[s] != spec.atoms()[s].first) {
      return IndexMismatchError("R row labels are not the inners of Delta_S");
    }
  }
  std::vector<HyperWitness::Atom> atoms;
  for (size_t i = 0; i < r.cols().size(); ++i) {
    Rat col = 0;
    for (size_t s = 0; s < spec.size(); ++s) {
      col += spec.atoms()[s].second * r.at(s, i);
    }
    if (sgn(col) == 0) continue;
    std::vector<Hyper::Atom> inner;
    for (size_t s = 0; s < spec.size(); ++s) {
      const Rat v = spec.atoms()[s].second * r.at(s, i);
      if (sgn(v) != 0) inner.emplace_back(spec.atoms()[s].first, v / col);
    }
    atoms.emplace_back(Hyper::Unchecked(spec.space(), std::move(inner)), col);
  }
  return HyperWitness::Create(spec.space(), std::move(atoms));
}

absl::StatusOr<RefinementMatrix> HyperWitnessToMatrix(const HyperWitness& w) {
  const Hyper spec = Avg(w);
  const Hyper impl = PushForwardAvg(w);
  std::map<Dist, size_t> row_of, col_of;
  for (size_t s = 0; s < spec.size(); ++s) row_of[spec.atoms()[s].first] = s;
  for (size_t i = 0; i < impl.size(); ++i) col_of[impl.atoms()[i].first] = i;
  std::vector<std::vector<Rat>> joint(spec.size(),
                                      std::vector<Rat>(impl.size(), Rat(0)));
  for (const auto& [h, p] : w.atoms()) {
    const size_t i = col_of.at(Avg(h));
    for (const auto& [inner, q] : h.atoms())
      joint[row_of.at(inner)][i] += p * q;
  }
  std::vector<Dist> rows, cols;
  for (size_t s = 0; s < spec.size(); ++s) {
    const Rat& ws = spec.atoms()[s].second;
    if (sgn(ws) == 0) {
      return DegenerateWitnessError("an inner of Delta_S has zero weight");
    }
    for (Rat& v : joint[s]) v /= ws;
    rows.push_back(spec.atoms()[s].first);
  }
  for (const auto& atom : impl.atoms()) cols.push_back(atom.first);
  return RefinementMatrix::Create(std::move(rows), std::move(cols),
                                  std::move(joint));
}

absl::StatusOr<bool> StrictRefines(const Hyper& spec, const Hyper& impl) {
  ASSIGN_OR_RETURN(RefinementResult r, CheckRefinement(spec, impl));
  return r.refines() && spec != impl;
}

}  // namespace hyperflow
