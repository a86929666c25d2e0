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

#include "hyperflow/lexer.h"

#include <cctype>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hyperflow {
namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

absl::StatusOr<std::vector<Token>> Lex(absl::string_view source,
                                       LexError* error) {
  std::vector<Token> tokens;
  size_t pos = 0;
  int line = 1;
  int column = 1;
  bool newline = true;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && pos < source.size(); ++k, ++pos) {
      if (source[pos] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  auto fail = [&](absl::string_view message) {
    if (error != nullptr)
      *error = LexError{{line, column}, std::string(message)};
    return absl::InvalidArgumentError(
        absl::StrCat(line, ":", column, ": ", message));
  };

  while (pos < source.size()) {
    const char c = source[pos];
    if (c == '\n') {
      newline = true;
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || source.substr(pos, 2) == "//") {
      while (pos < source.size() && source[pos] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.span = {line, column};
    tok.newline_before = newline;
    newline = false;
    size_t end = pos;
    if (IsIdentStart(c)) {
      tok.kind = Token::Kind::kIdent;
      while (end < source.size() && IsIdentChar(source[end])) ++end;
    } else if (IsDigit(c)) {
      tok.kind = Token::Kind::kNumber;
      while (end < source.size() && IsDigit(source[end])) ++end;
      if (end + 1 < source.size() &&
          (source[end] == '/' || source[end] == '.') &&
          IsDigit(source[end + 1])) {
        ++end;
        while (end < source.size() && IsDigit(source[end])) ++end;
      }
      // Labels such as "x0" start with a letter, but "0a" is not a token.
      if (end < source.size() && IsIdentStart(source[end])) {
        advance(end - pos);
        return fail("malformed number");
      }
    } else {
      tok.kind = Token::Kind::kPunct;
      absl::string_view two = source.substr(pos, 2);
      if (two == "<>" || two == ":=") {
        end = pos + 2;
      } else if (absl::string_view("{}[](),;:-").find(c) !=
                 absl::string_view::npos) {
        end = pos + 1;
      } else {
        return fail(
            absl::StrCat("unexpected character '", source.substr(pos, 1), "'"));
      }
    }
    tok.text = std::string(source.substr(pos, end - pos));
    advance(end - pos);
    tokens.push_back(std::move(tok));
  }

  Token eof;
  eof.kind = Token::Kind::kEnd;
  eof.span = {line, column};
  eof.newline_before = true;
  tokens.push_back(eof);
  return tokens;
}

}  // namespace hyperflow
