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

#ifndef HYPERFLOW_STATUS_MACROS_H_
#define HYPERFLOW_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

#define HF_CONCAT_INNER_(a, b) a##b
#define HF_CONCAT_(a, b) HF_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                \
  do {                                       \
    const absl::Status hf_status_ = (expr);  \
    if (!hf_status_.ok()) return hf_status_; \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                           \
  if (!tmp.ok()) return tmp.status();           \
  lhs = std::move(tmp).value()

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(HF_CONCAT_(hf_statusor_, __LINE__), lhs, rexpr)

namespace hyperflow {

// Error kinds are carried in the message prefix. Shape and space disagreements
// map to kFailedPrecondition, malformed values to kInvalidArgument.
inline absl::Status SpaceMismatchError(absl::string_view detail) {
  return absl::FailedPreconditionError(absl::StrCat("SpaceMismatch: ", detail));
}
inline absl::Status IndexMismatchError(absl::string_view detail) {
  return absl::FailedPreconditionError(absl::StrCat("IndexMismatch: ", detail));
}
inline absl::Status DimensionMismatchError(absl::string_view detail) {
  return absl::FailedPreconditionError(
      absl::StrCat("DimensionMismatch: ", detail));
}
inline absl::Status ZeroWeightError(absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat("ZeroWeight: ", detail));
}
inline absl::Status BadProbabilityError(absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat("BadProbability: ", detail));
}
inline absl::Status NotStochasticError(absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat("NotStochastic: ", detail));
}
inline absl::Status NotAJointError(absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat("NotAJoint: ", detail));
}
inline absl::Status UnknownLabelError(absl::string_view detail) {
  return absl::InvalidArgumentError(absl::StrCat("UnknownLabel: ", detail));
}
inline absl::Status NotMaterializedError(absl::string_view detail) {
  return absl::ResourceExhaustedError(
      absl::StrCat("NotMaterialized: ", detail));
}
inline absl::Status DegenerateWitnessError(absl::string_view detail) {
  return absl::InvalidArgumentError(
      absl::StrCat("DegenerateWitness: ", detail));
}

}  // namespace hyperflow

#endif  // HYPERFLOW_STATUS_MACROS_H_
