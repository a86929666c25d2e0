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

#include "hyperflow/elaborate.h"

#include <gtest/gtest.h>

#include <random>

#include "hyperflow/parser.h"
#include "hyperflow/random.h"
#include "test_util.h"

namespace hyperflow {
namespace {

using testing::Bits2;
using testing::D;
using testing::H;
using testing::R;
using testing::ReadTestData;
using testing::Space;

Elaborated Ok(absl::string_view src) {
  absl::StatusOr<Elaborated> e = Compile(src);
  EXPECT_TRUE(e.ok()) << e.status();
  return *std::move(e);
}

std::string ErrorOf(absl::string_view src) {
  absl::StatusOr<Elaborated> e = Compile(src);
  EXPECT_FALSE(e.ok());
  EXPECT_EQ(e.status().code(), absl::StatusCode::kInvalidArgument);
  return std::string(e.status().message());
}

std::vector<Dist> SomePriors(const SpacePtr& s) {
  std::mt19937_64 rng(81);
  std::vector<Dist> out = {Dist::Uniform(s)};
  for (int i = 0; i < 6; ++i) out.push_back(RandomDist(rng, s));
  return out;
}

TEST(Builtins, OneBit) {
  Environment env = *BuiltinMatrices(2);
  const ChannelMatrix& c = env.channels.at("oneBit");
  ASSERT_EQ(c.num_cols(), 2u);
  EXPECT_EQ(c.cols()[0], ObsLabel("0"));
  EXPECT_EQ(c.at(0, 0), 1);
  EXPECT_EQ(c.at(0, 1), 0);
  EXPECT_EQ(c.at(1, 0), R(1, 2));
  EXPECT_EQ(c.at(3, 1), 1);
}

TEST(Builtins, InvertAndSkewed) {
  Environment env = *BuiltinMatrices(2);
  const MarkovMatrix& m = env.markovs.at("invert");
  EXPECT_EQ(m.at(1, 0), 0);
  EXPECT_EQ(m.at(1, 1), R(1, 2));
  EXPECT_EQ(m.at(1, 2), R(1, 2));
  EXPECT_EQ(m.at(1, 3), 0);
  EXPECT_EQ(env.priors.at("skewed"),
            D(Bits2(), {0, R(1, 3), R(1, 3), R(1, 3)}));
  EXPECT_EQ(env.priors.at("uniform"), Dist::Uniform(Bits2()));
  EXPECT_EQ(env.channels.at("null"), ChannelMatrix::Null(Bits2()));
}

TEST(Builtins, WidthLimit) {
  absl::StatusOr<Environment> e = BuiltinMatrices(4, 3);
  ASSERT_FALSE(e.ok());
  EXPECT_NE(e.status().message().find("UnsupportedWidth"), std::string::npos);
  EXPECT_EQ(BuiltinMatrices(3, 3)->space->size(), 8u);
  EXPECT_FALSE(BuiltinMatrices(0).ok());
}

TEST(Elaborate, SugarMatchesBuiltins) {
  Environment env = *BuiltinMatrices(2);
  Elaborated reveal = Ok("reveal xs[0] 1/2<> xs[1]");
  EXPECT_TRUE(*AgreeOn(reveal.hmm, DenoteChannel(env.channels.at("oneBit")),
                       SomePriors(Bits2())));
  Program p = *Parse("reveal xs[0] 1/2<> xs[1]");
  EXPECT_EQ(*ExprChannel(*p.body[0].expr, Bits2(), 2),
            env.channels.at("oneBit"));
  Program q = *Parse("xs := xs 1/2<> -xs");
  EXPECT_EQ(*ExprMarkov(*q.body[0].expr, Bits2(), 2), env.markovs.at("invert"));
}

TEST(Elaborate, BitExpressions) {
  Program p = *Parse("reveal -xs[1] 1/4<> 1");
  ChannelMatrix c = *ExprChannel(*p.body[0].expr, Bits2(), 2);
  ASSERT_EQ(c.num_cols(), 2u);
  // State 00: not-bit is 1 so the value is always 1.
  EXPECT_EQ(c.at(0, 1), 1);
  // State 01: 0 with 1/4, 1 with 3/4.
  EXPECT_EQ(c.at(1, 0), R(1, 4));
  Program q = *Parse("xs := 10");
  MarkovMatrix m = *ExprMarkov(*q.body[0].expr, Bits2(), 2);
  for (size_t x = 0; x < 4; ++x) EXPECT_EQ(m.at(x, 2), 1);
  EXPECT_FALSE(ExprMarkov(*p.body[0].expr, Bits2(), 2).ok());  // width 1
}

TEST(Elaborate, DefaultsToTwoBitsAndUniform) {
  Elaborated e = Ok("");
  EXPECT_EQ(e.env.space->size(), 4u);
  EXPECT_EQ(e.prior, Dist::Uniform(Bits2()));
  EXPECT_EQ(*e.hmm.Evaluate(e.prior), PointHyper(e.prior));
  EXPECT_EQ(Ok(ReadTestData("leak_invert_skewed.hflow")).prior,
            D(Bits2(), {0, R(1, 3), R(1, 3), R(1, 3)}));
}

TEST(Elaborate, SequencingComposes) {
  Elaborated both = Ok(ReadTestData("leak_invert.hflow"));
  AbstractHmm seq = *KleisliCompose(Ok(ReadTestData("one_bit.hflow")).hmm,
                                    Ok(ReadTestData("invert.hflow")).hmm);
  EXPECT_TRUE(*AgreeOn(both.hmm, seq, SomePriors(Bits2())));
}

TEST(Elaborate, RepeatIsParallelComposition) {
  Environment env = *BuiltinMatrices(2);
  const ChannelMatrix& c = env.channels.at("oneBit");
  AbstractHmm par =
      DenoteChannel(*ParallelChannels(*ParallelChannels(c, c), c));
  EXPECT_TRUE(
      *AgreeOn(Ok("repeat 3 { reveal oneBit }").hmm, par, SomePriors(Bits2())));
  EXPECT_TRUE(*AgreeOn(Ok("repeat 0 { reveal oneBit }").hmm,
                       IdentityHmm(Bits2()), SomePriors(Bits2())));
}

TEST(Elaborate, RepeatedOneBitHyper) {
  Elaborated e = Ok(ReadTestData("repeat10.hflow"));
  SpacePtr s = Bits2();
  Hyper expected =
      H(s, {{D(s, {0, R(1, 2), R(1, 2), 0}), R(511, 1024)},
            {D(s, {0, R(1, 1026), R(1, 1026), R(512, 513)}), R(513, 2048)},
            {D(s, {R(512, 513), R(1, 1026), R(1, 1026), 0}), R(513, 2048)}});
  EXPECT_EQ(*e.hmm.Evaluate(e.prior), expected);
}

TEST(Elaborate, UserDefinitionsShadowBuiltins) {
  Elaborated e =
      Ok("channel oneBit : {y} { 00: 1\n 01: 1\n 10: 1\n 11: 1 }\n"
         "reveal oneBit");
  EXPECT_EQ(*e.hmm.Evaluate(e.prior), PointHyper(e.prior));
}

TEST(Elaborate, JointProgram) {
  Elaborated e = Ok(ReadTestData("coin_spec.hflow"));
  ASSERT_TRUE(e.joint.has_value());
  EXPECT_EQ(e.prior, Dist::Uniform(e.env.space));
  EXPECT_NE(
      ErrorOf("state {H, T};\njoint J : {a} { H: 1/2\n T: 1/2 }\nreveal null")
          .find("cannot have statements"),
      std::string::npos);
}

TEST(Elaborate, ErrorsCarryPositions) {
  ElaborationError err;
  absl::StatusOr<Elaborated> e =
      Elaborate(*Parse("reveal oneBit\n  reveal foo"), {}, &err);
  ASSERT_FALSE(e.ok());
  EXPECT_EQ(err.span.line, 2);
  EXPECT_EQ(err.span.column, 3);
  EXPECT_NE(err.message.find("no channel named 'foo'"), std::string::npos);
  EXPECT_EQ(e.status().message().substr(0, 4), "2:3:");

  EXPECT_NE(ErrorOf("update oneBit").find("no markov named"),
            std::string::npos);
  EXPECT_NE(ErrorOf("step oneBit nope").find("no markov named 'nope'"),
            std::string::npos);
  EXPECT_NE(ErrorOf("reveal xs[2]").find("out of range"), std::string::npos);
  EXPECT_NE(ErrorOf("reveal xs 1/2<> xs[0]").find("width"), std::string::npos);
  EXPECT_NE(ErrorOf("state {a, b};\nreveal xs").find("state bits"),
            std::string::npos);
  EXPECT_NE(
      ErrorOf("state {a, b};\nprior (1/2, 1/4, 1/4);").find("SpaceMismatch"),
      std::string::npos);
  EXPECT_NE(ErrorOf("prior {00: 1/2, 2: 1/2};").find("UnknownLabel"),
            std::string::npos);
  EXPECT_NE(ErrorOf("channel C : {y} { 00: 1 }").find("DimensionMismatch"),
            std::string::npos);
  EXPECT_NE(ErrorOf("markov M { 00: 1/2 0 0 0\n 01: 0 1 0 0\n 10: 0 0 1 0\n"
                    " 11: 0 0 0 1 }")
                .find("NotStochastic"),
            std::string::npos);
}

TEST(Elaborate, UnsupportedWidth) {
  std::string msg = ErrorOf("state bits 9;");
  EXPECT_NE(msg.find("UnsupportedWidth"), std::string::npos);
  EXPECT_EQ(msg.substr(0, 4), "1:1:");
  ElaborateOptions small;
  small.max_width = 1;
  EXPECT_FALSE(Compile("", small).ok());
  EXPECT_TRUE(Compile("state bits 1;", small).ok());
}

TEST(ResolvePrior, Forms) {
  Environment env = *BuiltinMatrices(2);
  EXPECT_EQ(*ResolvePrior(*ParsePrior("skewed"), env), env.priors.at("skewed"));
  EXPECT_EQ(*ResolvePrior(*ParsePrior("{11: 1}"), env),
            Dist::Point(Bits2(), 3));
  EXPECT_EQ(*ResolvePrior(*ParsePrior("(0, 0, 1/2, 1/2)"), env),
            D(Bits2(), {0, 0, R(1, 2), R(1, 2)}));
  absl::StatusOr<Dist> bad = ResolvePrior(*ParsePrior("(1/2, 1/2)"), env);
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(ResolvePrior(*ParsePrior("nosuch"), env).ok());
  EXPECT_FALSE(ResolvePrior(*ParsePrior("(1/2, 1/4, 0, 0)"), env).ok());
}

}  // namespace
}  // namespace hyperflow
