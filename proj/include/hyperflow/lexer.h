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

#ifndef HYPERFLOW_LEXER_H_
#define HYPERFLOW_LEXER_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hyperflow/ast.h"

namespace hyperflow {

struct Token {
  enum class Kind { kIdent, kNumber, kPunct, kEnd };

  Kind kind = Kind::kEnd;
  // Identifier, number literal ("3", "1/2", "0.25") or punctuation
  // ("{", "<>", ":=", ...).
  std::string text;
  SourceSpan span;
  // True when a line break separates this token from the previous one.
  bool newline_before = false;
};

struct LexError {
  SourceSpan span;
  std::string message;
};

// Comments run from '#' or "//" to the end of the line. Any character
// outside the token alphabet is an error.
absl::StatusOr<std::vector<Token>> Lex(absl::string_view source,
                                       LexError* error = nullptr);

}  // namespace hyperflow

#endif  // HYPERFLOW_LEXER_H_
