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

#include "hyperflow/hyper.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

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
using testing::Sub;

// The hyper produced by leaking one random bit of a uniform two-bit state.
Hyper OneBitHyper() {
  SpacePtr s = Bits2();
  return H(s, {{D(s, {R(1, 2), R(1, 4), R(1, 4), 0}), R(1, 2)},
               {D(s, {0, R(1, 4), R(1, 4), R(1, 2)}), R(1, 2)}});
}

Hyper BertrandHyper() {
  SpacePtr s = Space({"0", "1", "2"});
  return H(s, {{D(s, {0, R(1, 3), R(2, 3)}), R(1, 2)},
               {D(s, {R(2, 3), R(1, 3), 0}), R(1, 2)}});
}

TEST(Hyper, CanonicalFormIgnoresOrderAndSplits) {
  SpacePtr s = Space({"a", "b"});
  Dist p = D(s, {1, 0}), q = D(s, {R(1, 2), R(1, 2)});
  Hyper h1 = H(s, {{p, R(1, 3)}, {q, R(2, 3)}});
  Hyper h2 = H(s, {{q, R(1, 3)}, {p, R(1, 3)}, {q, R(1, 3)}});
  Hyper h3 = H(s, {{q, R(1, 6)}, {p, R(1, 3)}, {q, R(1, 2)}, {p, 0}});
  EXPECT_EQ(h1, h2);
  EXPECT_EQ(h1, h3);
  EXPECT_EQ(h1.size(), 2u);
  EXPECT_EQ(h1.atoms()[0].first, q);  // (1/2, 1/2) < (1, 0)
}

TEST(Hyper, CanonicalFormOfRandomPermutations) {
  std::mt19937_64 rng(3);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 30; ++t) {
    std::vector<Hyper::Atom> atoms;
    for (int k = 0; k < 4; ++k) atoms.push_back({RandomDist(rng, s), R(1, 4)});
    Hyper base = H(s, atoms);
    std::shuffle(atoms.begin(), atoms.end(), rng);
    // Split the first atom in two.
    atoms.push_back({atoms[0].first, R(1, 8)});
    atoms[0].second = R(1, 8);
    EXPECT_EQ(H(s, atoms), base);
  }
}

TEST(Hyper, RejectsBadOuters) {
  SpacePtr s = Space({"a", "b"});
  Dist p = D(s, {1, 0});
  EXPECT_FALSE(Hyper::Create(s, {{p, R(1, 2)}}).ok());
  EXPECT_FALSE(Hyper::Create(s, {{p, R(3, 2)}, {p, R(-1, 2)}}).ok());
  EXPECT_FALSE(Hyper::Create(s, {{Dist::Uniform(Bits2()), 1}}).ok());
}

TEST(PointHyper, HasOneInner) {
  Dist u = Dist::Uniform(Bits2());
  Hyper h = PointHyper(u);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.atoms()[0].first, u);
  EXPECT_EQ(h.atoms()[0].second, 1);
}

TEST(SubPoint, NormalizesAndKeepsWeight) {
  SpacePtr s = Bits2();
  SubHyper h = SubPoint(Sub(s, {R(1, 4), R(1, 8), R(1, 8), 0}));
  ASSERT_EQ(h.atoms().size(), 1u);
  EXPECT_EQ(h.atoms()[0].first, D(s, {R(1, 2), R(1, 4), R(1, 4), 0}));
  EXPECT_EQ(h.atoms()[0].second, R(1, 2));
  EXPECT_TRUE(SubPoint(SubDist::Zero(s)).atoms().empty());
  Dist u = Dist::Uniform(s);
  EXPECT_EQ(*Hyper::FromSubHypers(s, {SubPoint(u)}), PointHyper(u));
}

TEST(Avg, RecoversPrior) {
  EXPECT_EQ(Avg(OneBitHyper()), Dist::Uniform(Bits2()));
  EXPECT_EQ(Avg(BertrandHyper()), Dist::Uniform(BertrandHyper().space()));
  Dist d = D(Bits2(), {R(1, 8), R(3, 8), R(1, 2), 0});
  EXPECT_EQ(Avg(PointHyper(d)), d);
}

TEST(PushForward, IdentityAndConstant) {
  Hyper h = OneBitHyper();
  EXPECT_EQ(*PushForward([](const Dist& d) { return d; }, h), h);
  Dist u = Dist::Uniform(Bits2());
  EXPECT_EQ(*PushForward([&](const Dist&) { return u; }, h), PointHyper(u));
}

TEST(PushForward, MergesEqualImages) {
  SpacePtr s = Bits2();
  // Swapping 00 and 11 maps one inner onto the other.
  auto swap = [&](const Dist& d) {
    std::vector<Rat> v = d.Dense();
    std::swap(v[0], v[3]);
    return D(s, v);
  };
  Hyper h = OneBitHyper();
  EXPECT_EQ(*PushForward(swap, h), h);
  auto flatten = [&](const Dist& d) {
    std::vector<Rat> v = d.Dense();
    const Rat m = (v[0] + v[3]) / 2;
    v[0] = v[3] = m;
    return D(s, v);
  };
  EXPECT_EQ(*PushForward(flatten, h), PointHyper(Dist::Uniform(s)));
}

TEST(Expect, BayesVulnerabilityOfBertrand) {
  EXPECT_EQ(Expect(BertrandHyper(), BayesVulnerability), R(2, 3));
  EXPECT_EQ(Expect(OneBitHyper(), [](const Dist&) { return Rat(1); }), 1);
}

TEST(Expect, ShannonOfOneBitHyper) {
  // H(1/2, 1/4, 1/4, 0) = 1.5 for both inners.
  EXPECT_NEAR(ExpectDouble(OneBitHyper(), ShannonEntropy), 1.5, 1e-12);
}

TEST(Expect, IsLinear) {
  std::mt19937_64 rng(5);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 20; ++t) {
    Hyper h =
        H(s, {{RandomDist(rng, s), R(1, 3)}, {RandomDist(rng, s), R(2, 3)}});
    LossFunction l1 = RandomLoss(rng, s, 2), l2 = RandomLoss(rng, s, 3);
    auto u = [&](const Dist& d) { return *EvalLossMeasure(l1, d); };
    auto v = [&](const Dist& d) { return *EvalLossMeasure(l2, d); };
    const Rat a = RandomProbability(rng) * 3, b = RandomProbability(rng);
    EXPECT_EQ(
        Expect(h, [&](const Dist& d) -> Rat { return a * u(d) + b * v(d); }),
        a * Expect(h, u) + b * Expect(h, v));
  }
}

TEST(WeightedSum, Hypers) {
  Hyper a = OneBitHyper();
  Hyper b = PointHyper(Dist::Uniform(Bits2()));
  EXPECT_EQ(*WeightedSum(a, b, 1), a);
  EXPECT_EQ(*WeightedSum(a, b, 0), b);
  Hyper mix = *WeightedSum(a, b, R(1, 2));
  EXPECT_EQ(mix.size(), 3u);
  EXPECT_EQ(Avg(mix), Dist::Uniform(Bits2()));
  EXPECT_FALSE(WeightedSum(a, b, 2).ok());
}

TEST(KantorovichHyper, Examples) {
  Hyper h = OneBitHyper();
  EXPECT_EQ(*KantorovichHyper(h, h), 0);
  // Each half-weight inner is 1/4 away from uniform (in total variation).
  EXPECT_EQ(*KantorovichHyper(h, PointHyper(Dist::Uniform(Bits2()))), R(1, 4));
  SpacePtr s = Space({"a", "b"});
  EXPECT_EQ(
      *KantorovichHyper(PointHyper(D(s, {1, 0})), PointHyper(D(s, {0, 1}))), 1);
}

TEST(KantorovichHyper, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(9);
  SpacePtr s = Space({"a", "b"});
  auto random_hyper = [&] {
    const Rat p = RandomProbability(rng);
    return H(s, {{RandomDist(rng, s), p}, {RandomDist(rng, s), 1 - p}});
  };
  for (int t = 0; t < 20; ++t) {
    Hyper x = random_hyper(), y = random_hyper(), z = random_hyper();
    const Rat xy = *KantorovichHyper(x, y);
    EXPECT_EQ(xy, *KantorovichHyper(y, x));
    EXPECT_EQ(xy == 0, x == y);
    EXPECT_LE(*KantorovichHyper(x, z), xy + *KantorovichHyper(y, z));
  }
}

TEST(HyperWitness, AvgAndPushForwardAvg) {
  // The distribution of hypers given for the coin example: averaging gives
  // the specification, pushing Avg through gives the implementation.
  SpacePtr s = Space({"H", "T"});
  Dist a = D(s, {R(2, 3), R(1, 3)}), b = D(s, {R(1, 3), R(2, 3)});
  Hyper spec = H(s, {{a, R(1, 2)}, {b, R(1, 2)}});
  Hyper impl =
      H(s, {{a, R(1, 3)}, {D(s, {R(1, 2), R(1, 2)}), R(1, 3)}, {b, R(1, 3)}});
  HyperWitness w =
      *HyperWitness::Create(s, {{PointHyper(a), R(1, 3)},
                                {H(s, {{a, R(1, 2)}, {b, R(1, 2)}}), R(1, 3)},
                                {PointHyper(b), R(1, 3)}});
  EXPECT_EQ(Avg(w), spec);
  EXPECT_EQ(PushForwardAvg(w), impl);
}

TEST(HyperWitness, MonadLawsOnRandomHypers) {
  std::mt19937_64 rng(21);
  SpacePtr s = Space({"a", "b", "c"});
  for (int t = 0; t < 20; ++t) {
    Hyper h =
        H(s, {{RandomDist(rng, s), R(1, 4)}, {RandomDist(rng, s), R(3, 4)}});
    EXPECT_EQ(Avg(PushForwardPoint(h)), h);
    EXPECT_EQ(PushForwardAvg(PushForwardPoint(h)), h);
  }
}

}  // namespace
}  // namespace hyperflow
