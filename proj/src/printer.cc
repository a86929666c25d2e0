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

#include "hyperflow/printer.h"

#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace hyperflow {
namespace {

void PrintUnary(const Expr& e, std::string* out);

void PrintExprTo(const Expr& e, std::string* out) {
  if (e.kind != Expr::Kind::kChoice) {
    PrintUnary(e, out);
    return;
  }
  // Choice is right associative, so only a choice on the left needs parens.
  PrintUnary(e.children[0], out);
  absl::StrAppend(out, " ", FormatRat(e.p), "<> ");
  PrintExprTo(e.children[1], out);
}

void PrintUnary(const Expr& e, std::string* out) {
  switch (e.kind) {
    case Expr::Kind::kVar:
      absl::StrAppend(out, "xs");
      return;
    case Expr::Kind::kIndex:
      absl::StrAppend(out, "xs[", e.index, "]");
      return;
    case Expr::Kind::kConst:
      absl::StrAppend(out, e.bits);
      return;
    case Expr::Kind::kNeg:
      absl::StrAppend(out, "-");
      PrintUnary(e.children[0], out);
      return;
    case Expr::Kind::kChoice:
      absl::StrAppend(out, "(");
      PrintExprTo(e, out);
      absl::StrAppend(out, ")");
      return;
  }
}

std::string Rats(const std::vector<Rat>& values, absl::string_view sep) {
  return absl::StrJoin(values, sep, [](std::string* out, const Rat& r) {
    absl::StrAppend(out, FormatRat(r));
  });
}

void PrintStatement(const Statement& s, int indent, std::string* out) {
  const std::string pad(indent * 2, ' ');
  switch (s.kind) {
    case Statement::Kind::kReveal:
      absl::StrAppend(out, pad, "reveal ",
                      s.expr.has_value() ? PrintExpr(*s.expr) : s.name, ";\n");
      return;
    case Statement::Kind::kUpdate:
      if (s.expr.has_value()) {
        absl::StrAppend(out, pad, "xs := ", PrintExpr(*s.expr), ";\n");
      } else {
        absl::StrAppend(out, pad, "update ", s.name, ";\n");
      }
      return;
    case Statement::Kind::kStep:
      absl::StrAppend(out, pad, "step ", s.name, " ", s.markov, ";\n");
      return;
    case Statement::Kind::kRepeat:
      absl::StrAppend(out, pad, "repeat ", s.count, " {\n");
      for (const Statement& inner : s.body) {
        PrintStatement(inner, indent + 1, out);
      }
      absl::StrAppend(out, pad, "}\n");
      return;
  }
}

}  // namespace

std::string PrintExpr(const Expr& expr) {
  std::string out;
  PrintExprTo(expr, &out);
  return out;
}

std::string PrintPrior(const PriorDecl& prior) {
  switch (prior.kind) {
    case PriorDecl::Kind::kName:
      return prior.name;
    case PriorDecl::Kind::kDense:
      return absl::StrCat("(", Rats(prior.values, ", "), ")");
    case PriorDecl::Kind::kSparse:
      return absl::StrCat("{",
                          absl::StrJoin(prior.entries, ", ",
                                        [](std::string* out, const auto& e) {
                                          absl::StrAppend(out, e.first, ": ",
                                                          FormatRat(e.second));
                                        }),
                          "}");
  }
  return "";
}

std::string Print(const Program& program) {
  std::string out;
  if (program.state.has_value()) {
    if (program.state->bits) {
      absl::StrAppend(&out, "state bits ", program.state->width, ";\n");
    } else {
      absl::StrAppend(&out, "state {",
                      absl::StrJoin(program.state->labels, ", "), "};\n");
    }
  }
  for (const MatrixDef& m : program.matrices) {
    const char* head = m.kind == MatrixDef::Kind::kChannel  ? "channel"
                       : m.kind == MatrixDef::Kind::kMarkov ? "markov"
                                                            : "joint";
    absl::StrAppend(&out, head, " ", m.name);
    if (m.kind != MatrixDef::Kind::kMarkov) {
      absl::StrAppend(&out, " : {", absl::StrJoin(m.cols, ", "), "}");
    }
    absl::StrAppend(&out, " {\n");
    for (const MatrixRow& row : m.rows) {
      absl::StrAppend(&out, "  ", row.label, ": ", Rats(row.values, " "), "\n");
    }
    absl::StrAppend(&out, "}\n");
  }
  if (program.prior.has_value()) {
    absl::StrAppend(&out, "prior ", PrintPrior(*program.prior), ";\n");
  }
  for (const Statement& s : program.body) PrintStatement(s, 0, &out);
  return out;
}

}  // namespace hyperflow
