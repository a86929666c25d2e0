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

#ifndef HYPERFLOW_RATIONAL_H_
#define HYPERFLOW_RATIONAL_H_

#include <gmpxx.h>

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace hyperflow {

// Exact rational. GMP keeps the value in lowest terms with a positive
// denominator after every arithmetic operation.
using Rat = mpq_class;

// Accepts "p/q", integers and finite decimals ("0.25" -> 1/4). Signs allowed.
absl::StatusOr<Rat> ParseRat(absl::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string FormatRat(const Rat& r);

// Decimal rendering rounded half-to-even at `digits` fractional digits.
// Trailing zeros are dropped but one fractional digit is kept ("1.0").
std::string FormatDecimal(const Rat& r, int digits);

double ToDouble(const Rat& r);

}  // namespace hyperflow

#endif  // HYPERFLOW_RATIONAL_H_
