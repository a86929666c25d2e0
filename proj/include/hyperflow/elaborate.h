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

#ifndef HYPERFLOW_ELABORATE_H_
#define HYPERFLOW_ELABORATE_H_

#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hyperflow/abstract_hmm.h"
#include "hyperflow/ast.h"
#include "hyperflow/builtins.h"
#include "hyperflow/matrix.h"

namespace hyperflow {

struct ElaborateOptions {
  int max_width = kMaxBuiltinWidth;
};

struct ElaborationError {
  SourceSpan span;
  std::string message;
};

struct Elaborated {
  Environment env;
  AbstractHmm hmm;
  // The declared prior, or uniform when the program declares none.
  Dist prior;
  // Set when the program is a bare joint matrix rather than statements.
  std::optional<JointMatrix> joint;
};

// Without a state declaration the state is two bits. Statements compose
// left to right; an empty body denotes the identity. Errors are reported as
// kInvalidArgument "line:col: ..." and copied into `error` when given.
absl::StatusOr<Elaborated> Elaborate(const Program& program,
                                     const ElaborateOptions& options = {},
                                     ElaborationError* error = nullptr);

// Parse and elaborate in one go; parse errors keep their own message.
absl::StatusOr<Elaborated> Compile(absl::string_view source,
                                   const ElaborateOptions& options = {});

// Resolves a prior against a program's environment. Dense literals list
// probabilities in state order.
absl::StatusOr<Dist> ResolvePrior(const PriorDecl& prior,
                                  const Environment& env);

// Compiles a bit expression to the channel it reveals or, for assignments,
// the markov it applies.
absl::StatusOr<ChannelMatrix> ExprChannel(const Expr& expr,
                                          const SpacePtr& space, int width);
absl::StatusOr<MarkovMatrix> ExprMarkov(const Expr& expr, const SpacePtr& space,
                                        int width);

}  // namespace hyperflow

#endif  // HYPERFLOW_ELABORATE_H_
