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

#include "hyperflow/uncertainty.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hyperflow/abstract_hmm.h"
#include "hyperflow/elaborate.h"
#include "hyperflow/formats.h"
#include "hyperflow/random.h"
#include "test_util.h"

namespace hyperflow {
namespace {

using testing::Bits2;
using testing::D;
using testing::R;
using testing::ReadTestData;
using testing::Space;

Elaborated Load(const std::string& name) {
  absl::StatusOr<Elaborated> e = Compile(ReadTestData(name));
  EXPECT_TRUE(e.ok()) << e.status();
  return *std::move(e);
}

LossFunction SameDiff() {
  return *ParseLossFile(ReadTestData("same_diff.loss"), Bits2());
}

// Guess the state; a wrong guess costs 1. U is then 1 - max.
LossFunction GuessLoss(const SpacePtr& s) {
  std::vector<std::string> idx;
  std::vector<std::vector<Rat>> table;
  for (size_t i = 0; i < s->size(); ++i) {
    idx.push_back(s->label(i));
    std::vector<Rat> row(s->size(), Rat(1));
    row[i] = 0;
    table.push_back(row);
  }
  return *LossFunction::Create(s, idx, table);
}

TEST(LossFunction, Validates) {
  SpacePtr s = Space({"a", "b"});
  EXPECT_FALSE(LossFunction::Create(s, {"i"}, {{1}}).ok());
  EXPECT_FALSE(LossFunction::Create(s, {"i"}, {{1, -1}}).ok());
  EXPECT_FALSE(LossFunction::Create(s, {}, {}).ok());
  EXPECT_FALSE(LossFunction::Create(s, {"i", "i"}, {{1, 0}, {0, 1}}).ok());
}

TEST(Measures, Examples) {
  SpacePtr s = Space({"0", "1", "2"});
  Dist u = Dist::Uniform(s);
  EXPECT_NEAR(ShannonEntropy(Dist::Uniform(Bits2())), 2.0, 1e-12);
  EXPECT_NEAR(ShannonEntropy(D(s, {1, 0, 0})), 0.0, 1e-12);
  EXPECT_EQ(BayesVulnerability(u), R(1, 3));
  EXPECT_EQ(GuessingEntropy(u), 2);
  EXPECT_EQ(GuessingEntropy(D(s, {R(1, 6), R(2, 3), R(1, 6)})), R(3, 2));
  EXPECT_EQ(*EvalLossMeasure(GuessLoss(s), D(s, {R(1, 6), R(2, 3), R(1, 6)})),
            R(1, 3));
  EXPECT_EQ(*UncertaintyMeasure::BayesComplement().Exact(u), R(2, 3));
  EXPECT_FALSE(UncertaintyMeasure::Shannon().Exact(u).ok());
  EXPECT_NEAR(*UncertaintyMeasure::Shannon().Approx(u), std::log2(3.0), 1e-12);
}

TEST(Measures, LossMeasuresAreConcave) {
  std::mt19937_64 rng(51);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 50; ++t) {
    LossFunction l = RandomLoss(rng, s, 3);
    Dist a = RandomDist(rng, s), b = RandomDist(rng, s);
    const Rat p = RandomProbability(rng);
    const Rat mixed = *EvalLossMeasure(l, *WeightedSum(a, b, p));
    EXPECT_GE(mixed,
              p * *EvalLossMeasure(l, a) + (1 - p) * *EvalLossMeasure(l, b));
  }
}

TEST(Wp, SameDiffOnLeakThenInvert) {
  Elaborated e = Load("leak_invert.hflow");
  UncertaintyMeasure u = UncertaintyMeasure::Loss(SameDiff());
  EXPECT_EQ(*Wp(e.hmm, u, Dist::Uniform(Bits2())), R(1, 2));
  EXPECT_EQ(*Wp(e.hmm, u, D(Bits2(), {0, 0, R(1, 2), R(1, 2)})), R(1, 4));
  EXPECT_FALSE(
      Wp(e.hmm, UncertaintyMeasure::Shannon(), Dist::Uniform(Bits2())).ok());
}

TEST(WpLoss, PreLossAgreesWithWp) {
  Elaborated e = Load("leak_invert.hflow");
  LossFunction pre = *WpLoss(e.hmm, SameDiff());
  EXPECT_EQ(pre.size(), 4u);
  std::mt19937_64 rng(52);
  UncertaintyMeasure u = UncertaintyMeasure::Loss(SameDiff());
  for (int t = 0; t < 30; ++t) {
    Dist pi = RandomDist(rng, Bits2());
    EXPECT_EQ(*EvalLossMeasure(pre, pi), *Wp(e.hmm, u, pi));
  }
}

TEST(WpLoss, RandomTensors) {
  std::mt19937_64 rng(53);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 30; ++t) {
    HmmTensor h = RandomTensor(rng, s, 2);
    LossFunction l = RandomLoss(rng, s, 2);
    LossFunction pre = *WpLossTensor(h, l);
    Dist pi = RandomDist(rng, s);
    EXPECT_EQ(*EvalLossMeasure(pre, pi),
              *Wp(DenoteHmm(h), UncertaintyMeasure::Loss(l), pi));
  }
}

TEST(WpLoss, NotMaterialized) {
  Elaborated e = Load("repeat10.hflow");
  absl::StatusOr<LossFunction> pre = WpLoss(e.hmm, SameDiff(), 16);
  ASSERT_FALSE(pre.ok());
  EXPECT_EQ(pre.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(TransformerCompose, HoldsOnRandomPrograms) {
  std::mt19937_64 rng(54);
  SpacePtr s = Space({"a", "b"});
  for (int t = 0; t < 5; ++t) {
    AbstractHmm h1 = DenoteHmm(RandomTensor(rng, s, 2));
    AbstractHmm h2 = DenoteHmm(RandomTensor(rng, s, 2));
    TrialReport r = *TransformerComposeCheck(h1, h2, 6, rng);
    EXPECT_EQ(r.trials, 6);
    EXPECT_TRUE(r.ok());
  }
}

TEST(Leakage, Bertrand) {
  Elaborated e = Load("bertrand.hflow");
  LeakageReport bayes =
      *Leakage(e.hmm, e.prior, UncertaintyMeasure::BayesComplement());
  EXPECT_EQ(*bayes.prior_exact, R(2, 3));
  EXPECT_EQ(*bayes.posterior_exact, R(1, 3));
  EXPECT_EQ(*bayes.leak_exact, R(1, 3));
  LeakageReport guess =
      *Leakage(e.hmm, e.prior, UncertaintyMeasure::Guessing());
  EXPECT_EQ(*guess.prior_exact, 2);
  EXPECT_EQ(*guess.posterior_exact, R(4, 3));
  EXPECT_EQ(*guess.leak_exact, R(2, 3));
  LeakageReport shannon =
      *Leakage(e.hmm, e.prior, UncertaintyMeasure::Shannon());
  EXPECT_FALSE(shannon.leak_exact.has_value());
  EXPECT_NEAR(shannon.prior, std::log2(3.0), 1e-9);
  // Both posteriors are (2/3, 1/3, 0) up to order.
  const double h =
      -(2.0 / 3) * std::log2(2.0 / 3) - (1.0 / 3) * std::log2(1.0 / 3);
  EXPECT_NEAR(shannon.posterior, h, 1e-9);
  EXPECT_NEAR(shannon.leak, std::log2(3.0) - h, 1e-9);
}

TEST(Leakage, SkewedPriorHidesNothingFromBayes) {
  Elaborated e = Load("leak_invert_skewed.hflow");
  LeakageReport r =
      *Leakage(e.hmm, e.prior, UncertaintyMeasure::BayesComplement());
  EXPECT_EQ(*r.prior_exact, R(2, 3));
  EXPECT_EQ(*r.leak_exact, 0);
}

TEST(SkewedLoss, ScalesColumns) {
  SpacePtr s = Space({"a", "b"});
  LossFunction l = *LossFunction::Create(s, {"i", "j"}, {{1, 2}, {3, 4}});
  LossFunction sk = *SkewedLoss(D(s, {R(1, 4), R(3, 4)}), l);
  EXPECT_EQ(sk.row(0), (std::vector<Rat>{R(1, 4), R(3, 2)}));
  EXPECT_EQ(sk.row(1), (std::vector<Rat>{R(3, 4), 3}));
  EXPECT_FALSE(SkewedLoss(Dist::Uniform(Bits2()), l).ok());
}

TEST(CombineLoss, IsLinear) {
  std::mt19937_64 rng(55);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 30; ++t) {
    LossFunction l1 = RandomLoss(rng, s, 2), l2 = RandomLoss(rng, s, 3);
    const Rat a = RandomProbability(rng), b = 2 * RandomProbability(rng);
    LossFunction c = *CombineLoss(a, l1, b, l2);
    Dist pi = RandomDist(rng, s);
    EXPECT_EQ(*EvalLossMeasure(c, pi),
              a * *EvalLossMeasure(l1, pi) + b * *EvalLossMeasure(l2, pi));
  }
  EXPECT_FALSE(
      CombineLoss(-1, RandomLoss(rng, s, 1), 1, RandomLoss(rng, s, 1)).ok());
  EXPECT_EQ(*EvalLossMeasure(ConstantLoss(s, R(5, 2)), Dist::Uniform(s)),
            R(5, 2));
}

TEST(Multiplicative, HoldsForChannels) {
  std::mt19937_64 rng(56);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 5; ++t) {
    TrialReport r =
        *IsMultiplicative(DenoteChannel(RandomChannel(rng, s, 2)), 5, rng);
    EXPECT_TRUE(r.ok());
  }
}

TEST(Multiplicative, FailsForAMarkov) {
  SpacePtr s = Space({"a", "b"});
  MarkovMatrix swap = *MarkovMatrix::Create(s, {{0, 1}, {1, 0}});
  LossFunction l = *LossFunction::Create(s, {"i"}, {{1, 0}});
  EXPECT_FALSE(
      *MultiplicativeAt(DenoteMarkov(swap), D(s, {1, 0}), Dist::Uniform(s), l));
}

}  // namespace
}  // namespace hyperflow
