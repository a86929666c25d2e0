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

#ifndef HYPERFLOW_PRINTER_H_
#define HYPERFLOW_PRINTER_H_

#include <string>

#include "hyperflow/ast.h"

namespace hyperflow {

// Canonical source text. Parse(Print(p)) == p for every parsed program.
std::string Print(const Program& program);
std::string PrintExpr(const Expr& expr);
std::string PrintPrior(const PriorDecl& prior);

}  // namespace hyperflow

#endif  // HYPERFLOW_PRINTER_H_
