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

#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "hyperflow/lexer.h"
#include "hyperflow/status_macros.h"

namespace hyperflow {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kVar:
      return true;
    case Expr::Kind::kIndex:
      return a.index == b.index;
    case Expr::Kind::kConst:
      return a.bits == b.bits;
    case Expr::Kind::kNeg:
      return a.children == b.children;
    case Expr::Kind::kChoice:
      return a.p == b.p && a.children == b.children;
  }
  return false;
}

bool operator==(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.name == b.name && a.markov == b.markov &&
         a.expr == b.expr && a.count == b.count && a.body == b.body;
}

namespace {

constexpr int kMaxNesting = 200;

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseError* error)
      : tokens_(std::move(tokens)), error_(error) {}

  absl::StatusOr<Program> ParseProgram() {
    Program program;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.kind == Token::Kind::kIdent) {
        if (t.text == "state") {
          if (program.state.has_value()) {
            return Fail(t, "duplicate state declaration", {});
          }
          ASSIGN_OR_RETURN(program.state, ParseState());
          SkipSemicolon();
          continue;
        }
        if (t.text == "channel" || t.text == "markov" || t.text == "joint") {
          ASSIGN_OR_RETURN(MatrixDef def, ParseMatrix());
          program.matrices.push_back(std::move(def));
          SkipSemicolon();
          continue;
        }
        if (t.text == "prior") {
          if (program.prior.has_value()) {
            return Fail(t, "duplicate prior declaration", {});
          }
          Next();
          ASSIGN_OR_RETURN(program.prior, ParsePriorBody());
          program.prior->span = t.span;
          SkipSemicolon();
          continue;
        }
      }
      ASSIGN_OR_RETURN(Statement s, ParseStatement(0));
      program.body.push_back(std::move(s));
    }
    return program;
  }

  absl::StatusOr<PriorDecl> ParseStandalonePrior() {
    ASSIGN_OR_RETURN(PriorDecl prior, ParsePriorBody());
    SkipSemicolon();
    if (!AtEnd()) return Fail(Peek(), "trailing input after prior", {"end"});
    return prior;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool AtEnd() const { return Peek().kind == Token::Kind::kEnd; }
  bool IsPunct(absl::string_view p) const {
    return Peek().kind == Token::Kind::kPunct && Peek().text == p;
  }
  bool IsKeyword(absl::string_view k) const {
    return Peek().kind == Token::Kind::kIdent && Peek().text == k;
  }
  void SkipSemicolon() {
    while (IsPunct(";")) Next();
  }

  absl::Status Fail(const Token& at, absl::string_view message,
                    std::set<std::string> expected) {
    std::string found = at.kind == Token::Kind::kEnd
                            ? "end of input"
                            : absl::StrCat("'", at.text, "'");
    std::string full = absl::StrCat(message, " (found ", found, ")");
    if (!expected.empty()) {
      absl::StrAppend(&full, "; expected ", absl::StrJoin(expected, ", "));
    }
    if (error_ != nullptr) *error_ = ParseError{at.span, full, expected};
    return absl::InvalidArgumentError(
        absl::StrCat(at.span.line, ":", at.span.column, ": ", full));
  }

  absl::Status Expect(absl::string_view punct) {
    if (!IsPunct(punct)) {
      return Fail(Peek(), "unexpected token", {std::string(punct)});
    }
    Next();
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> ExpectName() {
    if (Peek().kind != Token::Kind::kIdent) {
      return Fail(Peek(), "unexpected token", {"name"});
    }
    return Next().text;
  }

  // Labels are identifiers or plain digit strings such as "01".
  bool AtLabel() const {
    const Token& t = Peek();
    if (t.kind == Token::Kind::kIdent) return true;
    return t.kind == Token::Kind::kNumber &&
           t.text.find_first_of("/.") == std::string::npos;
  }
  absl::StatusOr<std::string> ExpectLabel() {
    if (!AtLabel()) return Fail(Peek(), "unexpected token", {"label"});
    return Next().text;
  }

  absl::StatusOr<Rat> ExpectRat() {
    if (Peek().kind != Token::Kind::kNumber) {
      return Fail(Peek(), "unexpected token", {"number"});
    }
    const Token& t = Next();
    absl::StatusOr<Rat> r = ParseRat(t.text);
    if (!r.ok()) return Fail(t, r.status().message(), {});
    return r;
  }

  absl::StatusOr<Rat> ExpectProbability() {
    const Token& t = Peek();
    ASSIGN_OR_RETURN(Rat r, ExpectRat());
    if (r > 1) return Fail(t, "probability exceeds 1", {});
    return r;
  }

  absl::StatusOr<int> ExpectCount() {
    const Token& t = Peek();
    if (t.kind != Token::Kind::kNumber ||
        t.text.find_first_of("/.") != std::string::npos) {
      return Fail(t, "unexpected token", {"integer"});
    }
    Next();
    if (t.text.size() > 6) return Fail(t, "integer too large", {});
    return std::stoi(t.text);
  }

  absl::StatusOr<std::vector<std::string>> ParseLabelSet() {
    RETURN_IF_ERROR(Expect("{"));
    std::vector<std::string> labels;
    if (IsPunct("}")) return Fail(Peek(), "empty label set", {"label"});
    while (true) {
      ASSIGN_OR_RETURN(std::string label, ExpectLabel());
      labels.push_back(std::move(label));
      if (IsPunct(",")) {
        Next();
        continue;
      }
      if (IsPunct("}")) break;
      return Fail(Peek(), "unexpected token", {",", "}"});
    }
    Next();
    return labels;
  }

  absl::StatusOr<StateDecl> ParseState() {
    StateDecl decl;
    decl.span = Next().span;
    if (IsKeyword("bits")) {
      Next();
      decl.bits = true;
      ASSIGN_OR_RETURN(decl.width, ExpectCount());
      return decl;
    }
    if (IsPunct("{")) {
      ASSIGN_OR_RETURN(decl.labels, ParseLabelSet());
      return decl;
    }
    return Fail(Peek(), "unexpected token", {"bits", "{"});
  }

  absl::StatusOr<MatrixDef> ParseMatrix() {
    MatrixDef def;
    const Token& head = Next();
    def.span = head.span;
    def.kind = head.text == "channel"  ? MatrixDef::Kind::kChannel
               : head.text == "markov" ? MatrixDef::Kind::kMarkov
                                       : MatrixDef::Kind::kJoint;
    ASSIGN_OR_RETURN(def.name, ExpectName());
    if (def.kind != MatrixDef::Kind::kMarkov) {
      RETURN_IF_ERROR(Expect(":"));
      ASSIGN_OR_RETURN(def.cols, ParseLabelSet());
    }
    RETURN_IF_ERROR(Expect("{"));
    while (!IsPunct("}")) {
      if (IsPunct(";")) {
        Next();
        continue;
      }
      MatrixRow row;
      row.span = Peek().span;
      ASSIGN_OR_RETURN(row.label, ExpectLabel());
      RETURN_IF_ERROR(Expect(":"));
      // A row ends at a line break, ';' or the closing brace.
      while (Peek().kind == Token::Kind::kNumber && !Peek().newline_before) {
        ASSIGN_OR_RETURN(Rat v, ExpectProbability());
        row.values.push_back(std::move(v));
      }
      if (row.values.empty()) return Fail(Peek(), "empty row", {"number"});
      if (!IsPunct(";") && !IsPunct("}") && !Peek().newline_before) {
        return Fail(Peek(), "unexpected token", {"number", ";", "}"});
      }
      def.rows.push_back(std::move(row));
    }
    Next();
    return def;
  }

  absl::StatusOr<PriorDecl> ParsePriorBody() {
    PriorDecl prior;
    prior.span = Peek().span;
    if (Peek().kind == Token::Kind::kIdent) {
      prior.kind = PriorDecl::Kind::kName;
      prior.name = Next().text;
      return prior;
    }
    if (IsPunct("(")) {
      Next();
      prior.kind = PriorDecl::Kind::kDense;
      while (true) {
        ASSIGN_OR_RETURN(Rat v, ExpectProbability());
        prior.values.push_back(std::move(v));
        if (IsPunct(",")) {
          Next();
          continue;
        }
        RETURN_IF_ERROR(Expect(")"));
        break;
      }
      return prior;
    }
    if (IsPunct("{")) {
      Next();
      prior.kind = PriorDecl::Kind::kSparse;
      while (true) {
        ASSIGN_OR_RETURN(std::string label, ExpectLabel());
        RETURN_IF_ERROR(Expect(":"));
        ASSIGN_OR_RETURN(Rat v, ExpectProbability());
        prior.entries.emplace_back(std::move(label), std::move(v));
        if (IsPunct(",")) {
          Next();
          continue;
        }
        RETURN_IF_ERROR(Expect("}"));
        break;
      }
      return prior;
    }
    return Fail(Peek(), "unexpected token", {"name", "(", "{"});
  }

  absl::StatusOr<Statement> ParseStatement(int depth) {
    if (depth > kMaxNesting) return Fail(Peek(), "nesting too deep", {});
    const Token& t = Peek();
    Statement s;
    s.span = t.span;
    if (t.kind != Token::Kind::kIdent) {
      return Fail(t, "expected a statement",
                  {"reveal", "leak", "update", "step", "repeat", "xs"});
    }
    if (t.text == "reveal" || t.text == "leak") {
      Next();
      s.kind = Statement::Kind::kReveal;
      if (Peek().kind == Token::Kind::kIdent && Peek().text != "xs") {
        s.name = Next().text;
      } else {
        ASSIGN_OR_RETURN(s.expr, ParseExpr(depth + 1));
      }
    } else if (t.text == "update") {
      Next();
      s.kind = Statement::Kind::kUpdate;
      if (IsKeyword("xs")) {
        ASSIGN_OR_RETURN(s.expr, ParseAssignment(depth));
      } else {
        ASSIGN_OR_RETURN(s.name, ExpectName());
      }
    } else if (t.text == "xs") {
      s.kind = Statement::Kind::kUpdate;
      ASSIGN_OR_RETURN(s.expr, ParseAssignment(depth));
    } else if (t.text == "step") {
      Next();
      s.kind = Statement::Kind::kStep;
      ASSIGN_OR_RETURN(s.name, ExpectName());
      ASSIGN_OR_RETURN(s.markov, ExpectName());
    } else if (t.text == "repeat") {
      Next();
      s.kind = Statement::Kind::kRepeat;
      ASSIGN_OR_RETURN(s.count, ExpectCount());
      RETURN_IF_ERROR(Expect("{"));
      while (!IsPunct("}")) {
        if (AtEnd()) return Fail(Peek(), "unterminated repeat", {"}"});
        ASSIGN_OR_RETURN(Statement inner, ParseStatement(depth + 1));
        s.body.push_back(std::move(inner));
      }
      Next();
      return s;
    } else {
      return Fail(t, "expected a statement",
                  {"reveal", "leak", "update", "step", "repeat", "xs"});
    }
    SkipSemicolon();
    return s;
  }

  absl::StatusOr<Expr> ParseAssignment(int depth) {
    Next();  // xs
    RETURN_IF_ERROR(Expect(":="));
    return ParseExpr(depth + 1);
  }

  absl::StatusOr<Expr> ParseExpr(int depth) {
    if (depth > kMaxNesting) return Fail(Peek(), "nesting too deep", {});
    ASSIGN_OR_RETURN(Expr lhs, ParseUnary(depth));
    // A probability on the same line starts a choice; it is right
    // associative.
    if (Peek().kind == Token::Kind::kNumber && !Peek().newline_before) {
      Expr choice;
      choice.kind = Expr::Kind::kChoice;
      choice.span = Peek().span;
      ASSIGN_OR_RETURN(choice.p, ExpectProbability());
      RETURN_IF_ERROR(Expect("<>"));
      ASSIGN_OR_RETURN(Expr rhs, ParseExpr(depth + 1));
      choice.children.push_back(std::move(lhs));
      choice.children.push_back(std::move(rhs));
      return choice;
    }
    return lhs;
  }

  absl::StatusOr<Expr> ParseUnary(int depth) {
    if (depth > kMaxNesting) return Fail(Peek(), "nesting too deep", {});
    const Token& t = Peek();
    Expr e;
    e.span = t.span;
    if (t.kind == Token::Kind::kIdent && t.text == "xs") {
      Next();
      if (IsPunct("[")) {
        Next();
        e.kind = Expr::Kind::kIndex;
        ASSIGN_OR_RETURN(e.index, ExpectCount());
        RETURN_IF_ERROR(Expect("]"));
      } else {
        e.kind = Expr::Kind::kVar;
      }
      return e;
    }
    if (IsPunct("-")) {
      Next();
      e.kind = Expr::Kind::kNeg;
      ASSIGN_OR_RETURN(Expr inner, ParseUnary(depth + 1));
      e.children.push_back(std::move(inner));
      return e;
    }
    if (IsPunct("(")) {
      Next();
      ASSIGN_OR_RETURN(e, ParseExpr(depth + 1));
      RETURN_IF_ERROR(Expect(")"));
      return e;
    }
    if (t.kind == Token::Kind::kNumber &&
        t.text.find_first_not_of("01") == std::string::npos) {
      Next();
      e.kind = Expr::Kind::kConst;
      e.bits = t.text;
      return e;
    }
    return Fail(t, "expected an expression", {"xs", "-", "(", "bits"});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  ParseError* error_;
};

absl::StatusOr<std::vector<Token>> LexForParse(absl::string_view source,
                                               ParseError* error) {
  LexError lex_error;
  absl::StatusOr<std::vector<Token>> tokens = Lex(source, &lex_error);
  if (!tokens.ok() && error != nullptr) {
    *error = ParseError{lex_error.span, lex_error.message, {}};
  }
  return tokens;
}

}  // namespace

absl::StatusOr<Program> Parse(absl::string_view source, ParseError* error) {
  ASSIGN_OR_RETURN(std::vector<Token> tokens, LexForParse(source, error));
  Parser parser(std::move(tokens), error);
  return parser.ParseProgram();
}

absl::StatusOr<PriorDecl> ParsePrior(absl::string_view source,
                                     ParseError* error) {
  ASSIGN_OR_RETURN(std::vector<Token> tokens, LexForParse(source, error));
  Parser parser(std::move(tokens), error);
  return parser.ParseStandalonePrior();
}

}  // namespace hyperflow
