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

#ifndef HYPERFLOW_PARSER_H_
#define HYPERFLOW_PARSER_H_

#include <set>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hyperflow/ast.h"

namespace hyperflow {

struct ParseError {
  SourceSpan span;
  std::string message;
  // Token texts or classes ("name", "number") that would have been accepted.
  std::set<std::string> expected;
};

// Parses a complete program. On failure the returned status message is
// "line:col: message" and `error`, when given, receives the details.
absl::StatusOr<Program> Parse(absl::string_view source,
                              ParseError* error = nullptr);

// Parses a prior given on its own, e.g. "uniform", "(1/2, 1/2)" or
// "{a: 1/3, b: 2/3}".
absl::StatusOr<PriorDecl> ParsePrior(absl::string_view source,
                                     ParseError* error = nullptr);

}  // namespace hyperflow

#endif  // HYPERFLOW_PARSER_H_
