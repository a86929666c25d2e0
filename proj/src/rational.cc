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

#include "hyperflow/rational.h"

#include <cctype>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hyperflow {
namespace {

bool AllDigits(absl::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<Rat> ParseRat(absl::string_view text) {
  absl::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rat value;
  const size_t slash = body.find('/');
  const size_t dot = body.find('.');
  if (slash != absl::string_view::npos) {
    absl::string_view num = body.substr(0, slash);
    absl::string_view den = body.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed rational '", text, "'"));
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("zero denominator in '", text, "'"));
    }
    value = Rat(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else if (dot != absl::string_view::npos) {
    absl::string_view whole = body.substr(0, dot);
    absl::string_view frac = body.substr(dot + 1);
    if ((!whole.empty() && !AllDigits(whole)) || !AllDigits(frac)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed decimal '", text, "'"));
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(absl::StrCat(whole.empty() ? "0" : whole, frac), 10);
    value = Rat(digits, scale);
    value.canonicalize();
  } else {
    if (!AllDigits(body)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed number '", text, "'"));
    }
    value = Rat(mpz_class(std::string(body), 10));
  }
  if (negative) value = -value;
  return value;
}

std::string FormatRat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

std::string FormatDecimal(const Rat& r, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rat scaled = abs(r) * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rat rem = scaled - Rat(q);
  const int cmp_half = cmp(rem, Rat(1, 2));
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;

  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) {
    s.insert(0, digits + 1 - s.size(), '0');
  }
  std::string whole = s.substr(0, s.size() - digits);
  std::string frac = s.substr(s.size() - digits);
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  if (frac.empty()) frac = "0";
  const bool negative = sgn(r) < 0 && q != 0;
  return absl::StrCat(negative ? "-" : "", whole, ".", frac);
}

double ToDouble(const Rat& r) { return r.get_d(); }

}  // namespace hyperflow
