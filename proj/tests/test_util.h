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

#ifndef HYPERFLOW_TESTS_TEST_UTIL_H_
#define HYPERFLOW_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperflow/dist.h"
#include "hyperflow/hyper.h"
#include "hyperflow/rational.h"
#include "hyperflow/state_space.h"

#define HF_TEST_CONCAT_INNER_(a, b) a##b
#define HF_TEST_CONCAT_(a, b) HF_TEST_CONCAT_INNER_(a, b)

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr)                   \
  auto HF_TEST_CONCAT_(hf_test_or_, __LINE__) = (rexpr);   \
  ASSERT_TRUE(HF_TEST_CONCAT_(hf_test_or_, __LINE__).ok()) \
      << HF_TEST_CONCAT_(hf_test_or_, __LINE__).status();  \
  lhs = std::move(HF_TEST_CONCAT_(hf_test_or_, __LINE__)).value()

#define EXPECT_OK(expr)               \
  do {                                \
    const auto& hf_s_ = (expr);       \
    EXPECT_TRUE(hf_s_.ok()) << hf_s_; \
  } while (0)

namespace hyperflow::testing {

inline Rat R(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline SpacePtr Space(std::vector<std::string> labels) {
  return *StateSpace::Create(std::move(labels));
}

inline SpacePtr Bits2() { return StateSpace::Bits(2); }

inline Dist D(const SpacePtr& space, const std::vector<Rat>& values) {
  absl::StatusOr<Dist> d = Dist::FromDense(space, values);
  EXPECT_TRUE(d.ok()) << d.status();
  return *d;
}

inline SubDist Sub(const SpacePtr& space, const std::vector<Rat>& values) {
  absl::StatusOr<SubDist> d = SubDist::FromDense(space, values);
  EXPECT_TRUE(d.ok()) << d.status();
  return *d;
}

inline Hyper H(const SpacePtr& space, std::vector<Hyper::Atom> atoms) {
  absl::StatusOr<Hyper> h = Hyper::Create(space, std::move(atoms));
  EXPECT_TRUE(h.ok()) << h.status();
  return *h;
}

inline std::string TestData(const std::string& name) {
  return std::string(HYPERFLOW_TESTDATA) + "/" + name;
}

inline std::string ReadTestData(const std::string& name) {
  std::ifstream in(TestData(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hyperflow::testing

#endif  // HYPERFLOW_TESTS_TEST_UTIL_H_
