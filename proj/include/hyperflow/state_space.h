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

#ifndef HYPERFLOW_STATE_SPACE_H_
#define HYPERFLOW_STATE_SPACE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace hyperflow {

class StateSpace;
using SpacePtr = std::shared_ptr<const StateSpace>;

// Ordered, duplicate-free list of state labels. Shared by pointer between the
// values that live over it.
class StateSpace {
 public:
  static absl::StatusOr<SpacePtr> Create(std::vector<std::string> labels);

  // Labels are the 2^width bit strings in binary counting order; character 0
  // is xs[0].
  static SpacePtr Bits(int width);

  size_t size() const { return labels_.size(); }
  const std::string& label(size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<size_t> IndexOf(absl::string_view label) const;

  bool operator==(const StateSpace& other) const {
    return labels_ == other.labels_;
  }

 private:
  explicit StateSpace(std::vector<std::string> labels);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, size_t> index_;
};

// Pointer-or-content equality.
bool SameSpace(const SpacePtr& a, const SpacePtr& b);

}  // namespace hyperflow

#endif  // HYPERFLOW_STATE_SPACE_H_
