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

#include "hyperflow/refinement.h"

#include <gtest/gtest.h>

#include <random>

#include "hyperflow/abstract_hmm.h"
#include "hyperflow/random.h"
#include "hyperflow/uncertainty.h"
#include "test_util.h"

namespace hyperflow {
namespace {

using testing::Bits2;
using testing::D;
using testing::H;
using testing::R;
using testing::Space;

SpacePtr Coin() { return Space({"H", "T"}); }

Hyper CoinSpec() {
  SpacePtr s = Coin();
  return *AbstractJoint(
      *JointMatrix::Create(s, {ObsLabel("a"), ObsLabel("b")},
                           {{R(1, 3), R(1, 6)}, {R(1, 6), R(1, 3)}}));
}

Hyper CoinImpl() {
  SpacePtr s = Coin();
  return *AbstractJoint(*JointMatrix::Create(
      s, {ObsLabel("c"), ObsLabel("d"), ObsLabel("e")},
      {{R(2, 9), R(1, 6), R(1, 9)}, {R(1, 9), R(1, 6), R(2, 9)}}));
}

Hyper OneBitHyper() {
  SpacePtr s = Bits2();
  return H(s, {{D(s, {R(1, 2), R(1, 4), R(1, 4), 0}), R(1, 2)},
               {D(s, {0, R(1, 4), R(1, 4), R(1, 2)}), R(1, 2)}});
}

TEST(HyperToJoint, ScalesInnersByOuters) {
  JointMatrix j = HyperToJoint(CoinSpec());
  ASSERT_EQ(j.num_cols(), 2u);
  EXPECT_EQ(j.cols()[0], ObsLabel("c0"));
  // Canonical order puts (1/3, 2/3) first.
  EXPECT_EQ(j.at(0, 0), R(1, 6));
  EXPECT_EQ(j.at(1, 0), R(1, 3));
  EXPECT_EQ(*AbstractJoint(j), CoinSpec());
}

TEST(CheckRefinement, CoinExampleRefines) {
  RefinementResult r = *CheckRefinement(CoinSpec(), CoinImpl());
  ASSERT_TRUE(r.refines());
  ASSERT_TRUE(r.matrix.has_value());
  EXPECT_TRUE(*VerifyRefinementMatrix(CoinSpec(), CoinImpl(), *r.matrix));
  // J_S is invertible, so R is unique.
  const std::vector<std::vector<Rat>> expected = {{R(2, 3), R(1, 3), 0},
                                                  {0, R(1, 3), R(2, 3)}};
  EXPECT_EQ(r.matrix->entries(), expected);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(Avg(*r.witness), CoinSpec());
  EXPECT_EQ(PushForwardAvg(*r.witness), CoinImpl());
}

TEST(CheckRefinement, WitnessRoundTrip) {
  RefinementResult r = *CheckRefinement(CoinSpec(), CoinImpl());
  HyperWitness w = *MatrixWitnessToHyperWitness(CoinSpec(), *r.matrix);
  EXPECT_EQ(Avg(w), CoinSpec());
  EXPECT_EQ(PushForwardAvg(w), CoinImpl());
  RefinementMatrix back = *HyperWitnessToMatrix(w);
  EXPECT_TRUE(*VerifyRefinementMatrix(CoinSpec(), CoinImpl(), back));
}

TEST(CheckRefinement, ReversedCoinExampleFails) {
  RefinementResult r = *CheckRefinement(CoinImpl(), CoinSpec());
  ASSERT_FALSE(r.refines());
  ASSERT_TRUE(r.separator.has_value());
  EXPECT_TRUE(*Separates(*r.separator, CoinImpl(), CoinSpec()));
  EXPECT_FALSE(*Separates(*r.separator, CoinSpec(), CoinImpl()));
}

TEST(CheckRefinement, IdenticalHypersUseIdentity) {
  Hyper h = CoinImpl();
  RefinementResult r = *CheckRefinement(h, h);
  ASSERT_TRUE(r.refines());
  for (size_t s = 0; s < 3; ++s) {
    for (size_t i = 0; i < 3; ++i)
      EXPECT_EQ(r.matrix->at(s, i), s == i ? 1 : 0);
  }
  EXPECT_FALSE(*StrictRefines(h, h));
}

TEST(CheckRefinement, LeakingNothingIsMostSecure) {
  Hyper leak = OneBitHyper();
  Hyper none = PointHyper(Dist::Uniform(Bits2()));
  EXPECT_TRUE(CheckRefinement(leak, none)->refines());
  EXPECT_FALSE(CheckRefinement(none, leak)->refines());
  EXPECT_TRUE(*StrictRefines(leak, none));
  EXPECT_FALSE(*StrictRefines(none, leak));
}

TEST(CheckRefinement, DifferentPriorsNeverRefine) {
  SpacePtr s = Coin();
  RefinementResult r = *CheckRefinement(PointHyper(D(s, {R(1, 3), R(2, 3)})),
                                        PointHyper(Dist::Uniform(s)));
  ASSERT_FALSE(r.refines());
  EXPECT_TRUE(*Separates(*r.separator, PointHyper(D(s, {R(1, 3), R(2, 3)})),
                         PointHyper(Dist::Uniform(s))));
}

TEST(CheckRefinement, SpaceMismatch) {
  absl::StatusOr<RefinementResult> r =
      CheckRefinement(CoinSpec(), OneBitHyper());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(RefinementMatrix, Validates) {
  SpacePtr s = Coin();
  Dist a = D(s, {1, 0}), b = D(s, {0, 1});
  EXPECT_FALSE(
      RefinementMatrix::Create({a}, {a, b}, {{R(1, 2), R(1, 4)}}).ok());
  EXPECT_FALSE(RefinementMatrix::Create({a}, {a, b}, {{1}}).ok());
  EXPECT_TRUE(RefinementMatrix::Create({a}, {a, b}, {{R(1, 2), R(1, 2)}}).ok());
}

TEST(CheckRefinement, PostProcessingRefines) {
  // Merging observations with a random channel can only lose information.
  std::mt19937_64 rng(41);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 25; ++t) {
    HmmTensor h = RandomTensor(rng, s, 3);
    Dist pi = RandomDist(rng, s);
    JointMatrix j = *JointOfHmm(pi, h);
    std::vector<std::string> labels;
    for (const ObsLabel& o : j.cols()) labels.push_back(o.ToString());
    ChannelMatrix post = RandomChannel(rng, Space(labels), 2);
    Hyper spec = *AbstractJoint(j);
    Hyper impl = *AbstractJoint(*PostProcess(j, post));
    RefinementResult r = *CheckRefinement(spec, impl);
    ASSERT_TRUE(r.refines());
    EXPECT_TRUE(*VerifyRefinementMatrix(spec, impl, *r.matrix));
    for (int k = 0; k < 5; ++k) {
      LossFunction l = RandomLoss(rng, s, 3);
      auto u = [&](const Dist& d) { return *EvalLossMeasure(l, d); };
      EXPECT_LE(Expect(spec, u), Expect(impl, u));
    }
  }
}

}  // namespace
}  // namespace hyperflow
