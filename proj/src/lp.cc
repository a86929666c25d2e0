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

#include "hyperflow/lp.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {
namespace {

// Dense tableau over [original columns | one artificial per row].
class Tableau {
 public:
  Tableau(const RatMatrix& a, const std::vector<Rat>& b)
      : m_(a.size()),
        n_(a.empty() ? 0 : a[0].size()),
        rows_(m_, std::vector<Rat>(n_ + m_, Rat(0))),
        rhs_(m_),
        sign_(m_, 1),
        basis_(m_),
        cost_(n_ + m_, Rat(0)) {
    for (size_t i = 0; i < m_; ++i) {
      sign_[i] = sgn(b[i]) < 0 ? -1 : 1;
      for (size_t j = 0; j < n_; ++j) {
        if (sgn(a[i][j]) != 0) rows_[i][j] = sign_[i] * a[i][j];
      }
      rows_[i][n_ + i] = 1;
      rhs_[i] = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
  }

  // Phase I: minimize the sum of artificials. Returns the optimum.
  Rat PhaseOne() {
    for (size_t j = 0; j < n_ + m_; ++j) cost_[j] = j < n_ ? Rat(0) : Rat(1);
    neg_obj_ = 0;
    PriceOut();
    Run(n_ + m_);
    return -neg_obj_;
  }

  // Dual values of the Phase-I optimum, y = c_B B^-1, read off the
  // artificial columns (their reduced cost is 1 - y_i).
  std::vector<Rat> PhaseOneDuals() const {
    std::vector<Rat> y(m_);
    for (size_t i = 0; i < m_; ++i) y[i] = 1 - cost_[n_ + i];
    return y;
  }

  int sign(size_t i) const { return sign_[i]; }

  // Phase II from a Phase-I feasible basis. Returns false when unbounded.
  bool PhaseTwo(const std::vector<Rat>& c) {
    DriveOutArtificials();
    for (size_t j = 0; j < n_ + m_; ++j) cost_[j] = j < n_ ? c[j] : Rat(0);
    neg_obj_ = 0;
    PriceOut();
    return Run(n_);
  }

  Rat Objective() const { return -neg_obj_; }

  std::vector<Rat> Solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

 private:
  // Makes reduced costs of basic columns zero.
  void PriceOut() {
    for (size_t i = 0; i < m_; ++i) {
      const Rat cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (size_t j = 0; j < n_ + m_; ++j) {
        if (sgn(rows_[i][j]) != 0) cost_[j] -= cb * rows_[i][j];
      }
      neg_obj_ -= cb * rhs_[i];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool Run(size_t allowed) {
    while (true) {
      size_t q = allowed;
      for (size_t j = 0; j < allowed; ++j) {
        if (sgn(cost_[j]) < 0) {
          q = j;
          break;
        }
      }
      if (q == allowed) return true;
      size_t p = m_;
      Rat best;
      for (size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][q]) <= 0) continue;
        Rat ratio = rhs_[i] / rows_[i][q];
        if (p == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[p])) {
          p = i;
          best = std::move(ratio);
        }
      }
      if (p == m_) return false;
      Pivot(p, q);
    }
  }

  void Pivot(size_t p, size_t q) {
    const Rat pivot = rows_[p][q];
    std::vector<size_t> nz;
    for (size_t j = 0; j < n_ + m_; ++j) {
      if (sgn(rows_[p][j]) != 0) {
        rows_[p][j] /= pivot;
        nz.push_back(j);
      }
    }
    rhs_[p] /= pivot;
    auto eliminate = [&](std::vector<Rat>& row, Rat& rhs) {
      if (sgn(row[q]) == 0) return;
      const Rat f = row[q];
      for (size_t j : nz) row[j] -= f * rows_[p][j];
      rhs -= f * rhs_[p];
    };
    for (size_t i = 0; i < m_; ++i) {
      if (i != p) eliminate(rows_[i], rhs_[i]);
    }
    eliminate(cost_, neg_obj_);
    basis_[p] = q;
  }

  void DriveOutArtificials() {
    for (size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (size_t j = 0; j < n_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          Pivot(i, j);
          break;
        }
      }
      // A row with no original entries is redundant; its artificial stays
      // basic at level zero and never re-enters.
    }
  }

  size_t m_;
  size_t n_;
  RatMatrix rows_;
  std::vector<Rat> rhs_;
  std::vector<int> sign_;
  std::vector<size_t> basis_;
  std::vector<Rat> cost_;
  Rat neg_obj_;
};

absl::Status CheckShape(const RatMatrix& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) {
    return DimensionMismatchError(absl::StrCat(
        a.size(), " constraint rows but ", b.size(), " right-hand sides"));
  }
  for (const auto& row : a) {
    if (row.size() != a[0].size()) {
      return DimensionMismatchError("ragged constraint matrix");
    }
  }
  return absl::OkStatus();
}

}  // namespace

bool IsFarkasCertificate(const RatMatrix& a, const std::vector<Rat>& b,
                         const std::vector<Rat>& c) {
  if (c.size() != a.size()) return false;
  const size_t n = a.empty() ? 0 : a[0].size();
  for (size_t j = 0; j < n; ++j) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += c[i] * a[i][j];
    if (sgn(s) < 0) return false;
  }
  Rat cb = 0;
  for (size_t i = 0; i < b.size(); ++i) cb += c[i] * b[i];
  return sgn(cb) < 0;
}

absl::StatusOr<LpFeasibility> LpFeasible(const RatMatrix& a,
                                         const std::vector<Rat>& b) {
  RETURN_IF_ERROR(CheckShape(a, b));
  LpFeasibility out;
  if (a.empty()) {
    out.solution = std::vector<Rat>();
    return out;
  }
  Tableau t(a, b);
  const Rat infeasibility = t.PhaseOne();
  if (sgn(infeasibility) == 0) {
    out.solution = t.Solution();
    return out;
  }
  std::vector<Rat> y = t.PhaseOneDuals();
  std::vector<Rat> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = -t.sign(i) * y[i];
  if (!IsFarkasCertificate(a, b, c)) {
    return absl::InternalError(
        "simplex produced an invalid Farkas certificate");
  }
  out.certificate = std::move(c);
  return out;
}

absl::StatusOr<LpOptimum> LpMinimize(const RatMatrix& a,
                                     const std::vector<Rat>& b,
                                     const std::vector<Rat>& c) {
  RETURN_IF_ERROR(CheckShape(a, b));
  const size_t n = a.empty() ? c.size() : a[0].size();
  if (c.size() != n) {
    return DimensionMismatchError("objective length differs from columns");
  }
  if (a.empty()) {
    for (const Rat& cj : c) {
      if (sgn(cj) < 0) return absl::OutOfRangeError("unbounded program");
    }
    return LpOptimum{std::vector<Rat>(n, Rat(0)), Rat(0)};
  }
  Tableau t(a, b);
  if (sgn(t.PhaseOne()) != 0) {
    return absl::InvalidArgumentError("linear program is infeasible");
  }
  if (!t.PhaseTwo(c)) return absl::OutOfRangeError("unbounded program");
  return LpOptimum{t.Solution(), t.Objective()};
}

}  // namespace hyperflow
