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

#ifndef HYPERFLOW_AST_H_
#define HYPERFLOW_AST_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperflow/rational.h"

namespace hyperflow {

// 1-based position of a token in the source text.
struct SourceSpan {
  int line = 0;
  int column = 0;
};

// Bit expression over the hidden state `xs`. Equality ignores spans.
struct Expr {
  enum class Kind { kVar, kIndex, kConst, kNeg, kChoice };

  Kind kind = Kind::kVar;
  int index = 0;               // kIndex
  std::string bits;            // kConst
  Rat p;                       // kChoice: weight of children[0]
  std::vector<Expr> children;  // kNeg: 1, kChoice: 2
  SourceSpan span;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
};

struct Statement {
  enum class Kind { kReveal, kUpdate, kStep, kRepeat };

  Kind kind = Kind::kReveal;
  std::string name;             // reveal/update by name; step's channel
  std::string markov;           // step's markov
  std::optional<Expr> expr;     // reveal expression or assignment right side
  int count = 0;                // repeat
  std::vector<Statement> body;  // repeat
  SourceSpan span;

  friend bool operator==(const Statement& a, const Statement& b);
};

struct MatrixRow {
  std::string label;
  std::vector<Rat> values;
  SourceSpan span;

  friend bool operator==(const MatrixRow& a, const MatrixRow& b) {
    return a.label == b.label && a.values == b.values;
  }
};

struct MatrixDef {
  enum class Kind { kChannel, kMarkov, kJoint };

  Kind kind = Kind::kChannel;
  std::string name;
  std::vector<std::string> cols;  // channel and joint only
  std::vector<MatrixRow> rows;
  SourceSpan span;

  friend bool operator==(const MatrixDef& a, const MatrixDef& b) {
    return a.kind == b.kind && a.name == b.name && a.cols == b.cols &&
           a.rows == b.rows;
  }
};

struct StateDecl {
  bool bits = false;
  int width = 0;                    // bits
  std::vector<std::string> labels;  // explicit set
  SourceSpan span;

  friend bool operator==(const StateDecl& a, const StateDecl& b) {
    return a.bits == b.bits && a.width == b.width && a.labels == b.labels;
  }
};

struct PriorDecl {
  enum class Kind { kName, kDense, kSparse };

  Kind kind = Kind::kName;
  std::string name;
  std::vector<Rat> values;                           // dense, state order
  std::vector<std::pair<std::string, Rat>> entries;  // sparse
  SourceSpan span;

  friend bool operator==(const PriorDecl& a, const PriorDecl& b) {
    return a.kind == b.kind && a.name == b.name && a.values == b.values &&
           a.entries == b.entries;
  }
};

struct Program {
  std::optional<StateDecl> state;
  std::vector<MatrixDef> matrices;
  std::optional<PriorDecl> prior;
  std::vector<Statement> body;

  friend bool operator==(const Program& a, const Program& b) {
    return a.state == b.state && a.matrices == b.matrices &&
           a.prior == b.prior && a.body == b.body;
  }
};

}  // namespace hyperflow

#endif  // HYPERFLOW_AST_H_
