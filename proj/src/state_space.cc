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

#include "hyperflow/state_space.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hyperflow {

StateSpace::StateSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  for (size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

absl::StatusOr<SpacePtr> StateSpace::Create(std::vector<std::string> labels) {
  if (labels.empty()) {
    return absl::InvalidArgumentError("state space must be nonempty");
  }
  std::unordered_map<std::string, size_t> seen;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) {
      return absl::InvalidArgumentError("empty state label");
    }
    if (!seen.emplace(labels[i], i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate state label '", labels[i], "'"));
    }
  }
  return SpacePtr(new StateSpace(std::move(labels)));
}

SpacePtr StateSpace::Bits(int width) {
  std::vector<std::string> labels;
  const size_t n = size_t{1} << width;
  labels.reserve(n);
  for (size_t v = 0; v < n; ++v) {
    std::string s(width, '0');
    for (int b = 0; b < width; ++b) {
      if (v & (size_t{1} << (width - 1 - b))) s[b] = '1';
    }
    labels.push_back(std::move(s));
  }
  if (width == 0) labels = {"-"};
  return SpacePtr(new StateSpace(std::move(labels)));
}

std::optional<size_t> StateSpace::IndexOf(absl::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SameSpace(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return *a == *b;
}

}  // namespace hyperflow
