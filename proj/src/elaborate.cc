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

#include "hyperflow/elaborate.h"

#include <map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperflow/parser.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {
namespace {

using Outcomes = std::map<std::string, Rat>;

absl::StatusOr<int> ExprWidth(const Expr& e, int width) {
  switch (e.kind) {
    case Expr::Kind::kVar:
      return width;
    case Expr::Kind::kIndex:
      if (e.index < 0 || e.index >= width) {
        return absl::InvalidArgumentError(absl::StrCat(
            "bit index ", e.index, " out of range for ", width, "-bit state"));
      }
      return 1;
    case Expr::Kind::kConst:
      return static_cast<int>(e.bits.size());
    case Expr::Kind::kNeg:
      return ExprWidth(e.children[0], width);
    case Expr::Kind::kChoice: {
      ASSIGN_OR_RETURN(int a, ExprWidth(e.children[0], width));
      ASSIGN_OR_RETURN(int b, ExprWidth(e.children[1], width));
      if (a != b) {
        return absl::InvalidArgumentError(
            absl::StrCat("choice between values of width ", a, " and ", b));
      }
      return a;
    }
  }
  return 0;
}

// Distribution of the expression's value at state label `xs`.
Outcomes Evaluate(const Expr& e, const std::string& xs) {
  switch (e.kind) {
    case Expr::Kind::kVar:
      return {{xs, Rat(1)}};
    case Expr::Kind::kIndex:
      return {{std::string(1, xs[e.index]), Rat(1)}};
    case Expr::Kind::kConst:
      return {{e.bits, Rat(1)}};
    case Expr::Kind::kNeg: {
      Outcomes out;
      for (const auto& [v, p] : Evaluate(e.children[0], xs)) {
        std::string flipped = v;
        for (char& c : flipped) c = c == '0' ? '1' : '0';
        out[flipped] += p;
      }
      return out;
    }
    case Expr::Kind::kChoice: {
      Outcomes out;
      for (const auto& [v, p] : Evaluate(e.children[0], xs)) {
        out[v] += e.p * p;
      }
      const Rat q = 1 - e.p;
      for (const auto& [v, p] : Evaluate(e.children[1], xs)) {
        out[v] += q * p;
      }
      return out;
    }
  }
  return {};
}

absl::Status CheckBitSpace(const SpacePtr& space, int width) {
  if (width <= 0) {
    return absl::InvalidArgumentError(
        "bit expressions need a 'state bits' declaration");
  }
  if (space->size() != (size_t{1} << width)) {
    return DimensionMismatchError("state space is not a bit vector");
  }
  return absl::OkStatus();
}

absl::Status AtSpan(const SourceSpan& span, const absl::Status& status,
                    ElaborationError* error) {
  if (error != nullptr) {
    *error = ElaborationError{span, std::string(status.message())};
  }
  return absl::InvalidArgumentError(
      absl::StrCat(span.line, ":", span.column, ": ", status.message()));
}

class Elaborator {
 public:
  Elaborator(Environment env, int width, ElaborationError* error)
      : env_(std::move(env)), width_(width), error_(error) {}

  absl::Status Define(const MatrixDef& def) {
    absl::Status s = DefineImpl(def);
    if (!s.ok()) return AtSpan(def.span, s, error_);
    return absl::OkStatus();
  }

  absl::StatusOr<AbstractHmm> Block(const std::vector<Statement>& body) {
    AbstractHmm acc = IdentityHmm(env_.space);
    bool first = true;
    for (const Statement& s : body) {
      absl::StatusOr<AbstractHmm> h = One(s);
      if (!h.ok()) return h.status();
      if (first) {
        acc = *std::move(h);
        first = false;
        continue;
      }
      ASSIGN_OR_RETURN(acc, KleisliCompose(acc, *h));
    }
    return acc;
  }

  const Environment& env() const { return env_; }
  std::optional<JointMatrix>& joint() { return joint_; }

 private:
  absl::Status DefineImpl(const MatrixDef& def) {
    const SpacePtr& space = env_.space;
    const size_t n = space->size();
    std::vector<std::vector<Rat>> rows(n);
    std::vector<bool> seen(n, false);
    const size_t expected_cols =
        def.kind == MatrixDef::Kind::kMarkov ? n : def.cols.size();
    for (const MatrixRow& row : def.rows) {
      std::optional<size_t> x = space->IndexOf(row.label);
      if (!x.has_value()) {
        return UnknownLabelError(absl::StrCat("row '", row.label, "'"));
      }
      if (seen[*x]) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate row '", row.label, "'"));
      }
      if (row.values.size() != expected_cols) {
        return DimensionMismatchError(
            absl::StrCat("row '", row.label, "' has ", row.values.size(),
                         " entries, expected ", expected_cols));
      }
      seen[*x] = true;
      rows[*x] = row.values;
    }
    for (size_t x = 0; x < n; ++x) {
      if (!seen[x]) {
        return DimensionMismatchError(
            absl::StrCat("missing row '", space->label(x), "'"));
      }
    }
    std::vector<ObsLabel> cols;
    for (const std::string& c : def.cols) cols.emplace_back(c);
    switch (def.kind) {
      case MatrixDef::Kind::kChannel: {
        ASSIGN_OR_RETURN(ChannelMatrix c,
                         ChannelMatrix::Create(space, std::move(cols), rows));
        env_.channels.insert_or_assign(def.name, std::move(c));
        break;
      }
      case MatrixDef::Kind::kMarkov: {
        ASSIGN_OR_RETURN(MarkovMatrix m, MarkovMatrix::Create(space, rows));
        env_.markovs.insert_or_assign(def.name, std::move(m));
        break;
      }
      case MatrixDef::Kind::kJoint: {
        if (joint_.has_value()) {
          return absl::InvalidArgumentError("more than one joint matrix");
        }
        ASSIGN_OR_RETURN(joint_,
                         JointMatrix::Create(space, std::move(cols), rows));
        break;
      }
    }
    return absl::OkStatus();
  }

  absl::StatusOr<AbstractHmm> One(const Statement& s) {
    absl::StatusOr<AbstractHmm> h = OneImpl(s);
    if (!h.ok() && s.kind != Statement::Kind::kRepeat) {
      return AtSpan(s.span, h.status(), error_);
    }
    return h;
  }

  absl::StatusOr<AbstractHmm> OneImpl(const Statement& s) {
    switch (s.kind) {
      case Statement::Kind::kReveal: {
        if (s.expr.has_value()) {
          ASSIGN_OR_RETURN(ChannelMatrix c,
                           ExprChannel(*s.expr, env_.space, width_));
          return DenoteChannel(c);
        }
        ASSIGN_OR_RETURN(const ChannelMatrix* c, LookupChannel(s.name));
        return DenoteChannel(*c);
      }
      case Statement::Kind::kUpdate: {
        if (s.expr.has_value()) {
          ASSIGN_OR_RETURN(MarkovMatrix m,
                           ExprMarkov(*s.expr, env_.space, width_));
          return DenoteMarkov(m);
        }
        ASSIGN_OR_RETURN(const MarkovMatrix* m, LookupMarkov(s.name));
        return DenoteMarkov(*m);
      }
      case Statement::Kind::kStep: {
        ASSIGN_OR_RETURN(const ChannelMatrix* c, LookupChannel(s.name));
        ASSIGN_OR_RETURN(const MarkovMatrix* m, LookupMarkov(s.markov));
        return DenoteStep(*c, *m);
      }
      case Statement::Kind::kRepeat: {
        ASSIGN_OR_RETURN(AbstractHmm body, Block(s.body));
        AbstractHmm acc = IdentityHmm(env_.space);
        for (int k = 0; k < s.count; ++k) {
          if (k == 0) {
            acc = body;
          } else {
            ASSIGN_OR_RETURN(acc, KleisliCompose(acc, body));
          }
        }
        return acc;
      }
    }
    return absl::InternalError("unknown statement");
  }

  absl::StatusOr<const ChannelMatrix*> LookupChannel(const std::string& name) {
    auto it = env_.channels.find(name);
    if (it == env_.channels.end()) {
      return UnknownLabelError(absl::StrCat("no channel named '", name, "'"));
    }
    return &it->second;
  }

  absl::StatusOr<const MarkovMatrix*> LookupMarkov(const std::string& name) {
    auto it = env_.markovs.find(name);
    if (it == env_.markovs.end()) {
      return UnknownLabelError(absl::StrCat("no markov named '", name, "'"));
    }
    return &it->second;
  }

  Environment env_;
  int width_;
  ElaborationError* error_;
  std::optional<JointMatrix> joint_;
};

}  // namespace

absl::StatusOr<ChannelMatrix> ExprChannel(const Expr& expr,
                                          const SpacePtr& space, int width) {
  RETURN_IF_ERROR(CheckBitSpace(space, width));
  RETURN_IF_ERROR(ExprWidth(expr, width).status());
  const size_t n = space->size();
  std::vector<Outcomes> per_state(n);
  std::map<std::string, size_t> col_index;
  for (size_t x = 0; x < n; ++x) {
    per_state[x] = Evaluate(expr, space->label(x));
    for (const auto& [v, p] : per_state[x]) {
      if (p != 0) col_index.emplace(v, 0);
    }
  }
  std::vector<ObsLabel> cols;
  for (auto& [v, idx] : col_index) {
    idx = cols.size();
    cols.emplace_back(v);
  }
  std::vector<Rat> flat(n * cols.size());
  for (size_t x = 0; x < n; ++x) {
    for (const auto& [v, p] : per_state[x]) {
      if (p != 0) flat[x * cols.size() + col_index[v]] = p;
    }
  }
  return ChannelMatrix::CreateFlat(space, std::move(cols), std::move(flat));
}

absl::StatusOr<MarkovMatrix> ExprMarkov(const Expr& expr, const SpacePtr& space,
                                        int width) {
  RETURN_IF_ERROR(CheckBitSpace(space, width));
  ASSIGN_OR_RETURN(int w, ExprWidth(expr, width));
  if (w != width) {
    return DimensionMismatchError(absl::StrCat(
        "assigning a ", w, "-bit value to a ", width, "-bit state"));
  }
  const size_t n = space->size();
  std::vector<Rat> flat(n * n);
  for (size_t x = 0; x < n; ++x) {
    for (const auto& [v, p] : Evaluate(expr, space->label(x))) {
      flat[x * n + *space->IndexOf(v)] += p;
    }
  }
  return MarkovMatrix::CreateFlat(space, std::move(flat));
}

absl::StatusOr<Dist> ResolvePrior(const PriorDecl& prior,
                                  const Environment& env) {
  switch (prior.kind) {
    case PriorDecl::Kind::kName: {
      auto it = env.priors.find(prior.name);
      if (it == env.priors.end()) {
        return UnknownLabelError(
            absl::StrCat("no prior named '", prior.name, "'"));
      }
      return it->second;
    }
    case PriorDecl::Kind::kDense:
      if (prior.values.size() != env.space->size()) {
        return SpaceMismatchError(
            absl::StrCat("prior has ", prior.values.size(),
                         " entries, state space has ", env.space->size()));
      }
      return Dist::FromDense(env.space, prior.values);
    case PriorDecl::Kind::kSparse:
      return Dist::FromLabels(env.space, prior.entries);
  }
  return absl::InternalError("unknown prior kind");
}

absl::StatusOr<Elaborated> Elaborate(const Program& program,
                                     const ElaborateOptions& options,
                                     ElaborationError* error) {
  int width = 0;
  Environment env;
  if (!program.state.has_value() || program.state->bits) {
    width = program.state.has_value() ? program.state->width : 2;
    absl::StatusOr<Environment> builtins =
        BuiltinMatrices(width, options.max_width);
    if (!builtins.ok()) {
      return AtSpan(
          program.state.has_value() ? program.state->span : SourceSpan{1, 1},
          builtins.status(), error);
    }
    env = *std::move(builtins);
  } else {
    absl::StatusOr<SpacePtr> space = StateSpace::Create(program.state->labels);
    if (!space.ok()) return AtSpan(program.state->span, space.status(), error);
    env = GenericBuiltins(*space);
  }

  Elaborator elab(std::move(env), width, error);
  for (const MatrixDef& def : program.matrices) {
    RETURN_IF_ERROR(elab.Define(def));
  }
  if (elab.joint().has_value() && !program.body.empty()) {
    return AtSpan(program.body.front().span,
                  absl::InvalidArgumentError(
                      "a program with a joint matrix cannot have statements"),
                  error);
  }
  ASSIGN_OR_RETURN(AbstractHmm hmm, elab.Block(program.body));

  std::optional<Dist> prior;
  if (elab.joint().has_value()) {
    prior = elab.joint()->RowMarginal();
  } else if (program.prior.has_value()) {
    absl::StatusOr<Dist> p = ResolvePrior(*program.prior, elab.env());
    if (!p.ok()) return AtSpan(program.prior->span, p.status(), error);
    prior = *std::move(p);
  } else {
    prior = Dist::Uniform(elab.env().space);
  }
  return Elaborated{elab.env(), std::move(hmm), *std::move(prior),
                    std::move(elab.joint())};
}

absl::StatusOr<Elaborated> Compile(absl::string_view source,
                                   const ElaborateOptions& options) {
  ASSIGN_OR_RETURN(Program program, Parse(source));
  return Elaborate(program, options);
}

}  // namespace hyperflow
