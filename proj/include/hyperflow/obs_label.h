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

#ifndef HYPERFLOW_OBS_LABEL_H_
#define HYPERFLOW_OBS_LABEL_H_

#include <string>
#include <vector>

namespace hyperflow {

// Observation label: an atom, or a tuple built by composing observation
// alphabets. Tuples are never flattened implicitly.
class ObsLabel {
 public:
  ObsLabel() = default;
  explicit ObsLabel(std::string atom) : atom_(std::move(atom)) {}
  static ObsLabel Tuple(std::vector<ObsLabel> parts);

  bool is_tuple() const { return is_tuple_; }
  const std::string& atom() const { return atom_; }
  const std::vector<ObsLabel>& parts() const { return parts_; }

  // "a" or "(a,(b,c))".
  std::string ToString() const;
  // Leaves in left-to-right order.
  std::vector<std::string> Flatten() const;

  friend bool operator==(const ObsLabel& a, const ObsLabel& b);
  friend bool operator!=(const ObsLabel& a, const ObsLabel& b) {
    return !(a == b);
  }
  friend bool operator<(const ObsLabel& a, const ObsLabel& b);

 private:
  bool is_tuple_ = false;
  std::string atom_;
  std::vector<ObsLabel> parts_;
};

// The null channel's single observation.
inline constexpr char kNullObservation[] = "\xE2\x80\xA2";  // U+2022

}  // namespace hyperflow

#endif  // HYPERFLOW_OBS_LABEL_H_
