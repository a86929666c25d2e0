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

#include "hyperflow/dalenius.h"

#include <gtest/gtest.h>

#include <random>

#include "hyperflow/elaborate.h"
#include "hyperflow/formats.h"
#include "hyperflow/random.h"
#include "test_util.h"

namespace hyperflow {
namespace {

using testing::D;
using testing::R;
using testing::ReadTestData;
using testing::Space;

struct Case {
  Elaborated program;
  CorrelatedPrior corr;
};

Case LoadText(const std::string& program, const std::string& corr_text) {
  Elaborated e = *Compile(ReadTestData(program));
  CorrelatedPrior c = *ParseCorrelatedPrior(corr_text, e.env.space);
  return {std::move(e), std::move(c)};
}

Case Load(const std::string& program, const std::string& corr) {
  return LoadText(program, ReadTestData(corr));
}

TEST(ProductSpace, LabelsAreXMajor) {
  SpacePtr p = ProductSpace(Space({"x0", "x1"}), Space({"z0", "z1", "z2"}));
  ASSERT_EQ(p->size(), 6u);
  EXPECT_EQ(p->label(0), "x0,z0");
  EXPECT_EQ(p->label(4), "x1,z1");
}

TEST(Extend, ChannelAndMarkovIgnoreZ) {
  SpacePtr x = Space({"x0", "x1"}), z = Space({"z0", "z1"});
  ChannelMatrix c = *ChannelMatrix::Create(x, {ObsLabel("y0"), ObsLabel("y1")},
                                           {{1, 0}, {R(1, 4), R(3, 4)}});
  ChannelMatrix cz = ExtendChannel(c, z);
  EXPECT_EQ(cz.at(3, 1), R(3, 4));
  EXPECT_EQ(cz.at(1, 0), 1);
  MarkovMatrix m = *MarkovMatrix::Create(x, {{R(1, 2), R(1, 2)}, {0, 1}});
  MarkovMatrix mz = ExtendMarkov(m, z);
  EXPECT_EQ(mz.at(0, 2), R(1, 2));
  EXPECT_EQ(mz.at(0, 3), 0);
  EXPECT_EQ(mz.at(1, 3), R(1, 2));
}

TEST(Marginals, OfIndependentPrior) {
  std::mt19937_64 rng(61);
  SpacePtr x = Space({"a", "b", "c"}), z = Space({"p", "q"});
  for (int t = 0; t < 20; ++t) {
    Dist px = RandomDist(rng, x), pz = RandomDist(rng, z);
    Dist joint = IndependentPrior(px, pz);
    EXPECT_EQ(MarginalX(joint, x, z), px);
    EXPECT_EQ(MarginalZ(joint, x, z), pz);
  }
}

TEST(DaleniusAnalysis, CopyOfXShiftsOdds) {
  Case s = Load("dalenius.hflow", "dalenius.corr");
  DaleniusResult r = *DaleniusAnalysis(s.program.hmm, s.corr.z, s.corr.joint);
  ASSERT_EQ(r.by_observation.size(), 2u);
  EXPECT_EQ(r.by_observation[0].probability, R(5, 8));
  EXPECT_EQ(r.by_observation[0].z_posterior, D(s.corr.z, {R(4, 5), R(1, 5)}));
  EXPECT_EQ(r.by_observation[1].probability, R(3, 8));
  EXPECT_EQ(r.by_observation[1].z_posterior, D(s.corr.z, {0, 1}));
  EXPECT_EQ(r.z_hyper.size(), 2u);
}

TEST(DaleniusAnalysis, FactoredFormAgrees) {
  Case s = Load("dalenius.hflow", "dalenius.corr");
  const Environment& env = s.program.env;
  DaleniusResult a = *DaleniusAnalysis(
      env.channels.at("C"), env.markovs.at("M"), s.corr.z, s.corr.joint);
  DaleniusResult b = *DaleniusAnalysis(s.program.hmm, s.corr.z, s.corr.joint);
  EXPECT_EQ(a.product, b.product);
  EXPECT_EQ(a.z_hyper, b.z_hyper);
}

TEST(DaleniusAnalysis, XProjectionIsTheProgram) {
  Case s = Load("dalenius.hflow", "dalenius.corr");
  DaleniusResult r = *DaleniusAnalysis(s.program.hmm, s.corr.z, s.corr.joint);
  const SpacePtr& x = s.program.env.space;
  Dist px = MarginalX(s.corr.joint, x, s.corr.z);
  EXPECT_EQ(r.x_hyper, *s.program.hmm.Evaluate(px));
  EXPECT_EQ(ProjectX(r.product, x, s.corr.z), r.x_hyper);
  EXPECT_EQ(ProjectZ(r.product, x, s.corr.z), r.z_hyper);
}

TEST(DaleniusAnalysis, IndependentZLearnsNothing) {
  Case s = Load("dalenius.hflow", "independent.corr");
  DaleniusResult r = *DaleniusAnalysis(s.program.hmm, s.corr.z, s.corr.joint);
  EXPECT_EQ(r.z_hyper, PointHyper(Dist::Uniform(s.corr.z)));
}

TEST(DaleniusAnalysis, OverwriteHidesButLeakFirstDoesNot) {
  const std::string copy = "0,z0: 1/2\n1,z1: 1/2\n";
  Case quiet = LoadText("overwrite.hflow", copy);
  Case noisy = LoadText("leak_overwrite.hflow", copy);
  // Both programs end with the same X knowledge.
  DaleniusResult q =
      *DaleniusAnalysis(quiet.program.hmm, quiet.corr.z, quiet.corr.joint);
  DaleniusResult n =
      *DaleniusAnalysis(noisy.program.hmm, noisy.corr.z, noisy.corr.joint);
  EXPECT_EQ(q.x_hyper, n.x_hyper);
  EXPECT_EQ(q.z_hyper.size(), 1u);
  EXPECT_EQ(n.z_hyper.size(), 2u);
}

TEST(DaleniusAnalysis, SpaceMismatch) {
  Case s = Load("dalenius.hflow", "dalenius.corr");
  absl::StatusOr<DaleniusResult> r =
      DaleniusAnalysis(s.program.hmm, Space({"z0", "z1", "z2"}), s.corr.joint);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

}  // namespace
}  // namespace hyperflow
