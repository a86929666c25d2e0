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

#include "hyperflow/parser.h"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "hyperflow/lexer.h"
#include "hyperflow/printer.h"
#include "test_util.h"

namespace hyperflow {
namespace {

using testing::R;
using testing::ReadTestData;

TEST(Lexer, TokensAndNewlines) {
  std::vector<Token> t = *Lex("xs := xs 1/2<> -xs # tail\nreveal 0.25");
  ASSERT_EQ(t.size(), 10u);
  EXPECT_EQ(t[1].text, ":=");
  EXPECT_EQ(t[3].text, "1/2");
  EXPECT_EQ(t[3].kind, Token::Kind::kNumber);
  EXPECT_EQ(t[4].text, "<>");
  EXPECT_FALSE(t[5].newline_before);
  EXPECT_TRUE(t[7].newline_before);
  EXPECT_EQ(t[7].span.line, 2);
  EXPECT_EQ(t[7].span.column, 1);
  EXPECT_EQ(t[8].text, "0.25");
  EXPECT_EQ(t[9].kind, Token::Kind::kEnd);
}

TEST(Lexer, RejectsStrayCharacters) {
  LexError e;
  EXPECT_FALSE(Lex("reveal xs @", &e).ok());
  EXPECT_EQ(e.span.line, 1);
  EXPECT_EQ(e.span.column, 11);
  EXPECT_FALSE(Lex("0a").ok());
  EXPECT_TRUE(Lex("// only a comment").ok());
}

TEST(Parse, EmptyProgram) {
  Program p = *Parse("");
  EXPECT_FALSE(p.state.has_value());
  EXPECT_TRUE(p.body.empty());
  EXPECT_TRUE(Parse("# nothing\n\n").ok());
}

TEST(Parse, ChoiceOfBitReveals) {
  Program p = *Parse(ReadTestData("one_bit.hflow"));
  ASSERT_TRUE(p.state.has_value());
  EXPECT_TRUE(p.state->bits);
  EXPECT_EQ(p.state->width, 2);
  ASSERT_EQ(p.body.size(), 1u);
  const Statement& s = p.body[0];
  EXPECT_EQ(s.kind, Statement::Kind::kReveal);
  ASSERT_TRUE(s.expr.has_value());
  EXPECT_EQ(s.expr->kind, Expr::Kind::kChoice);
  EXPECT_EQ(s.expr->p, R(1, 2));
  EXPECT_EQ(s.expr->children[0].kind, Expr::Kind::kIndex);
  EXPECT_EQ(s.expr->children[0].index, 0);
  EXPECT_EQ(s.expr->children[1].index, 1);
}

TEST(Parse, ChoiceIsRightAssociative) {
  Program p = *Parse("reveal xs[0] 1/2<> xs[1] 1/3<> -xs");
  const Expr& e = *p.body[0].expr;
  ASSERT_EQ(e.kind, Expr::Kind::kChoice);
  EXPECT_EQ(e.children[0].kind, Expr::Kind::kIndex);
  EXPECT_EQ(e.children[1].kind, Expr::Kind::kChoice);
  EXPECT_EQ(e.children[1].children[1].kind, Expr::Kind::kNeg);
}

TEST(Parse, AssignmentForms) {
  Program a = *Parse("xs := xs 1/2<> -xs");
  Program b = *Parse("update xs := xs 1/2<> -xs;");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.body[0].kind, Statement::Kind::kUpdate);
  EXPECT_EQ(*Parse("leak oneBit"), *Parse("reveal oneBit;"));
}

TEST(Parse, RepeatAndStep) {
  Program p = *Parse("repeat 10 { reveal oneBit }\nstep C M");
  ASSERT_EQ(p.body.size(), 2u);
  EXPECT_EQ(p.body[0].kind, Statement::Kind::kRepeat);
  EXPECT_EQ(p.body[0].count, 10);
  ASSERT_EQ(p.body[0].body.size(), 1u);
  EXPECT_EQ(p.body[0].body[0].name, "oneBit");
  EXPECT_EQ(p.body[1].kind, Statement::Kind::kStep);
  EXPECT_EQ(p.body[1].name, "C");
  EXPECT_EQ(p.body[1].markov, "M");
}

TEST(Parse, Declarations) {
  Program p = *Parse(ReadTestData("bertrand.hflow"));
  EXPECT_EQ(p.state->labels, (std::vector<std::string>{"0", "1", "2"}));
  ASSERT_EQ(p.matrices.size(), 1u);
  const MatrixDef& m = p.matrices[0];
  EXPECT_EQ(m.kind, MatrixDef::Kind::kChannel);
  EXPECT_EQ(m.cols, (std::vector<std::string>{"white", "black"}));
  ASSERT_EQ(m.rows.size(), 3u);
  EXPECT_EQ(m.rows[1].values, (std::vector<Rat>{R(1, 2), R(1, 2)}));
  Program j = *Parse(ReadTestData("coin_impl.hflow"));
  EXPECT_EQ(j.matrices[0].kind, MatrixDef::Kind::kJoint);
  Program s = *Parse("markov M { a: 1/2 1/2; b: 0 1 }");
  EXPECT_EQ(s.matrices[0].rows.size(), 2u);
}

TEST(Parse, Priors) {
  EXPECT_EQ(Parse("prior skewed;")->prior->name, "skewed");
  PriorDecl dense = *ParsePrior("(1/2, 1/4, 1/8, 1/8)");
  EXPECT_EQ(dense.kind, PriorDecl::Kind::kDense);
  EXPECT_EQ(dense.values.size(), 4u);
  PriorDecl sparse = *ParsePrior("{a: 1/3, b: 2/3}");
  EXPECT_EQ(sparse.kind, PriorDecl::Kind::kSparse);
  EXPECT_EQ(sparse.entries[1], (std::pair<std::string, Rat>{"b", R(2, 3)}));
  EXPECT_FALSE(ParsePrior("uniform extra").ok());
}

TEST(ParseError, ReportsSpanAndExpectedTokens) {
  ParseError e;
  absl::StatusOr<Program> p =
      Parse("state bits 2;\nreveal xs[0] 1/2 xs[1]", &e);
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(p.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(e.span.line, 2);
  EXPECT_EQ(e.span.column, 18);
  EXPECT_EQ(e.expected, (std::set<std::string>{"<>"}));
  EXPECT_EQ(p.status().message().substr(0, 5), "2:18:");
}

TEST(ParseError, MissingStatement) {
  ParseError e;
  EXPECT_FALSE(Parse("reveal oneBit;\n  }", &e).ok());
  EXPECT_EQ(e.span.line, 2);
  EXPECT_EQ(e.span.column, 3);
  EXPECT_TRUE(e.expected.count("reveal"));
  EXPECT_TRUE(e.expected.count("repeat"));
}

TEST(ParseError, Assorted) {
  ParseError e;
  EXPECT_FALSE(Parse("reveal", &e).ok());
  EXPECT_TRUE(e.expected.count("xs"));
  EXPECT_FALSE(Parse("repeat 3 { reveal oneBit", &e).ok());
  EXPECT_EQ(e.expected, (std::set<std::string>{"}"}));
  EXPECT_FALSE(Parse("reveal xs 3/2<> -xs", &e).ok());
  EXPECT_NE(e.message.find("exceeds 1"), std::string::npos);
  EXPECT_FALSE(Parse("state bits 2; state bits 3;", &e).ok());
  EXPECT_FALSE(Parse("channel C : {} { a: 1 }", &e).ok());
  EXPECT_FALSE(Parse("xs : xs", &e).ok());
  EXPECT_EQ(e.expected, (std::set<std::string>{":="}));
}

TEST(ParseError, DeepNestingIsAnErrorNotACrash) {
  std::string deep(5000, '(');
  deep = "reveal " + deep + "xs" + std::string(5000, ')');
  ParseError e;
  EXPECT_FALSE(Parse(deep, &e).ok());
  EXPECT_NE(e.message.find("nesting"), std::string::npos);
  std::string negs = "reveal " + std::string(5000, '-') + "xs";
  EXPECT_FALSE(Parse(negs).ok());
}

// Random well-formed source text.
class SourceGen {
 public:
  explicit SourceGen(uint64_t seed) : rng_(seed) {}

  std::string Program() {
    std::string out;
    if (Coin()) out += "state bits 2;\n";
    if (Coin())
      out += "prior " + Pick({"uniform", "skewed", "(1/2, 1/4, 1/8, 1/8)"}) +
             ";\n";
    const int n = Int(0, 4);
    for (int i = 0; i < n; ++i) out += Statement(0) + "\n";
    return out;
  }

 private:
  std::string Statement(int depth) {
    switch (Int(0, depth < 2 ? 4 : 3)) {
      case 0:
        return "reveal " + Expr(0) + ";";
      case 1:
        return "xs := " + Expr(0) + ";";
      case 2:
        return "leak " + Pick({"oneBit", "null"});
      case 3:
        return "update " + Pick({"invert", "id"});
      default: {
        std::string body;
        const int n = Int(0, 2);
        for (int i = 0; i < n; ++i) body += " " + Statement(depth + 1);
        return "repeat " + std::to_string(Int(0, 3)) + " {" + body + " }";
      }
    }
  }

  std::string Expr(int depth) {
    std::string lhs = Unary(depth);
    if (depth < 3 && Int(0, 2) == 0) {
      return lhs + " " + Pick({"1/2", "1/3", "0", "1", "0.25"}) + "<> " +
             Expr(depth + 1);
    }
    return lhs;
  }

  std::string Unary(int depth) {
    switch (Int(0, depth < 3 ? 4 : 2)) {
      case 0:
        return "xs";
      case 1:
        return "xs[" + std::to_string(Int(0, 1)) + "]";
      case 2:
        return Pick({"00", "01", "1"});
      case 3:
        return "-" + Unary(depth + 1);
      default:
        return "(" + Expr(depth + 1) + ")";
    }
  }

  bool Coin() { return Int(0, 1) == 1; }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::string Pick(std::initializer_list<const char*> xs) {
    return *(xs.begin() + Int(0, static_cast<int>(xs.size()) - 1));
  }

  std::mt19937_64 rng_;
};

TEST(Printer, RoundTripsRandomPrograms) {
  SourceGen gen(71);
  for (int t = 0; t < 300; ++t) {
    const std::string src = gen.Program();
    absl::StatusOr<Program> p = Parse(src);
    ASSERT_TRUE(p.ok()) << src << "\n" << p.status();
    const std::string printed = Print(*p);
    absl::StatusOr<Program> q = Parse(printed);
    ASSERT_TRUE(q.ok()) << printed << "\n" << q.status();
    EXPECT_EQ(*p, *q) << src << "\n--\n" << printed;
    EXPECT_EQ(Print(*q), printed);
  }
}

TEST(Printer, RoundTripsTestData) {
  for (const char* name :
       {"invert.hflow", "one_bit.hflow", "leak_invert.hflow",
        "leak_invert_skewed.hflow", "bertrand.hflow", "repeat10_invert.hflow",
        "coin_spec.hflow", "dalenius.hflow"}) {
    Program p = *Parse(ReadTestData(name));
    EXPECT_EQ(*Parse(Print(p)), p) << name;
  }
}

TEST(Parse, IsTotalOnRandomInput) {
  // Any input yields a program or an error; mutations of valid programs
  // exercise the error paths.
  std::mt19937_64 rng(72);
  const std::string alphabet = "xs[]01/2<>-(){}:;=, \nrevalkupdtbigo#.";
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  for (int t = 0; t < 500; ++t) {
    std::string s(t % 40, ' ');
    for (char& c : s) c = alphabet[pick(rng)];
    ParseError e;
    absl::StatusOr<Program> p = Parse(s, &e);
    if (!p.ok()) EXPECT_GE(e.span.line, 1) << s;
  }
  SourceGen gen(73);
  for (int t = 0; t < 300; ++t) {
    std::string s = gen.Program();
    if (s.empty()) continue;
    std::uniform_int_distribution<size_t> at(0, s.size() - 1);
    for (int k = 0; k < 3; ++k) s[at(rng)] = alphabet[pick(rng)];
    ParseError e;
    absl::StatusOr<Program> p = Parse(s, &e);
    if (!p.ok()) EXPECT_GE(e.span.line, 1) << s;
  }
}

}  // namespace
}  // namespace hyperflow
