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

#include "hyperflow/obs_label.h"

#include <utility>

#include "absl/strings/str_join.h"

namespace hyperflow {

ObsLabel ObsLabel::Tuple(std::vector<ObsLabel> parts) {
  ObsLabel l;
  l.is_tuple_ = true;
  l.parts_ = std::move(parts);
  return l;
}

std::string ObsLabel::ToString() const {
  if (!is_tuple_) return atom_;
  std::vector<std::string> items;
  for (const auto& p : parts_) items.push_back(p.ToString());
  return "(" + absl::StrJoin(items, ",") + ")";
}

std::vector<std::string> ObsLabel::Flatten() const {
  if (!is_tuple_) return {atom_};
  std::vector<std::string> out;
  for (const auto& p : parts_) {
    auto sub = p.Flatten();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

bool operator==(const ObsLabel& a, const ObsLabel& b) {
  return a.is_tuple_ == b.is_tuple_ && a.atom_ == b.atom_ &&
         a.parts_ == b.parts_;
}

bool operator<(const ObsLabel& a, const ObsLabel& b) {
  if (a.is_tuple_ != b.is_tuple_) return !a.is_tuple_;
  if (!a.is_tuple_) return a.atom_ < b.atom_;
  return a.parts_ < b.parts_;
}

}  // namespace hyperflow
