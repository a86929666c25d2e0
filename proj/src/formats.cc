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

#include "hyperflow/formats.h"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "hyperflow/dalenius.h"
#include "hyperflow/status_macros.h"
#include "json.hpp"

namespace hyperflow {
namespace {

// Yields (line number, trimmed content) for lines that are not blank or
// comments.
std::vector<std::pair<int, absl::string_view>> ContentLines(
    absl::string_view text) {
  std::vector<std::pair<int, absl::string_view>> out;
  int number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++number;
    const size_t hash = line.find('#');
    if (hash != absl::string_view::npos) line = line.substr(0, hash);
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

absl::Status LineError(int line, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", message));
}

std::string PadRight(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string FormatNumber(const Rat& r, const NumberFormat& format) {
  return format.decimal ? FormatDecimal(r, format.digits) : FormatRat(r);
}

std::string RenderHyper(const Hyper& h, const NumberFormat& format) {
  size_t label_width = 0;
  size_t inner_width = 0;
  for (const auto& [inner, outer] : h.atoms()) {
    for (const auto& [x, p] : inner.entries()) {
      label_width = std::max(label_width, inner.space()->label(x).size());
      inner_width = std::max(inner_width, FormatNumber(p, format).size());
    }
  }
  std::string out;
  bool first_group = true;
  for (const auto& [inner, outer] : h.atoms()) {
    if (!first_group) out += "\n";
    first_group = false;
    bool first_row = true;
    for (const auto& [x, p] : inner.entries()) {
      std::string line = absl::StrCat(
          PadRight(inner.space()->label(x), label_width), "  ",
          first_row ? PadRight(FormatNumber(p, format), inner_width)
                    : FormatNumber(p, format));
      if (first_row) absl::StrAppend(&line, "  ", FormatNumber(outer, format));
      absl::StrAppend(&out, line, "\n");
      first_row = false;
    }
  }
  return out;
}

std::string RenderHyperJson(const Hyper& h) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [inner, outer] : h.atoms()) {
    nlohmann::ordered_json atom;
    atom["outer"] = FormatRat(outer);
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [x, p] : inner.entries()) {
      entries[inner.space()->label(x)] = FormatRat(p);
    }
    atom["inner"] = std::move(entries);
    arr.push_back(std::move(atom));
  }
  return arr.dump(2) + "\n";
}

std::string RenderDist(const Dist& d, const NumberFormat& format) {
  size_t width = 0;
  for (const auto& [x, p] : d.entries()) {
    width = std::max(width, d.space()->label(x).size());
  }
  std::string out;
  for (const auto& [x, p] : d.entries()) {
    absl::StrAppend(&out, PadRight(d.space()->label(x), width), "  ",
                    FormatNumber(p, format), "\n");
  }
  return out;
}

absl::StatusOr<LossFunction> ParseLossFile(absl::string_view text,
                                           const SpacePtr& space) {
  std::string name;
  std::vector<std::string> indices;
  std::vector<std::vector<Rat>> table;
  bool header = false;
  for (const auto& [number, line] : ContentLines(text)) {
    if (!header) {
      std::vector<absl::string_view> words =
          absl::StrSplit(line, ' ', absl::SkipWhitespace());
      if (words.empty() || words[0] != "loss" || words.size() > 2) {
        return LineError(number, "expected 'loss <name>' header");
      }
      if (words.size() == 2) name = std::string(words[1]);
      header = true;
      continue;
    }
    const size_t colon = line.find(':');
    if (colon == absl::string_view::npos) {
      return LineError(number, "expected '<index>: values'");
    }
    absl::string_view index = absl::StripAsciiWhitespace(line.substr(0, colon));
    if (index.empty()) return LineError(number, "empty index");
    std::vector<Rat> row;
    for (absl::string_view v :
         absl::StrSplit(line.substr(colon + 1), ' ', absl::SkipWhitespace())) {
      absl::StatusOr<Rat> r = ParseRat(v);
      if (!r.ok()) return LineError(number, r.status().message());
      row.push_back(*std::move(r));
    }
    indices.emplace_back(index);
    table.push_back(std::move(row));
  }
  if (!header) return absl::InvalidArgumentError("empty loss file");
  return LossFunction::Create(space, std::move(indices), std::move(table),
                              std::move(name));
}

std::string WriteLossFile(const LossFunction& l) {
  std::string name = l.name().empty() ? "l" : l.name();
  std::replace_if(
      name.begin(), name.end(),
      [](char c) { return absl::ascii_isspace(static_cast<unsigned char>(c)); },
      '_');
  std::string out = absl::StrCat("loss ", name, "\n# columns:");
  for (const std::string& x : l.space()->labels())
    absl::StrAppend(&out, " ", x);
  out += "\n";
  for (size_t i = 0; i < l.size(); ++i) {
    absl::StrAppend(&out, l.indices()[i], ":");
    for (const Rat& v : l.row(i)) absl::StrAppend(&out, " ", FormatRat(v));
    out += "\n";
  }
  return out;
}

absl::StatusOr<CorrelatedPrior> ParseCorrelatedPrior(absl::string_view text,
                                                     const SpacePtr& x) {
  std::vector<std::string> z_labels;
  std::map<std::string, size_t> z_index;
  struct Entry {
    size_t x;
    size_t z;
    Rat p;
  };
  std::vector<Entry> entries;
  for (const auto& [number, line] : ContentLines(text)) {
    const size_t colon = line.rfind(':');
    if (colon == absl::string_view::npos) {
      return LineError(number, "expected 'x,z: p'");
    }
    absl::string_view key = line.substr(0, colon);
    const size_t comma = key.find(',');
    if (comma == absl::string_view::npos) {
      return LineError(number, "expected 'x,z: p'");
    }
    const std::string xl(absl::StripAsciiWhitespace(key.substr(0, comma)));
    const std::string zl(absl::StripAsciiWhitespace(key.substr(comma + 1)));
    std::optional<size_t> xi = x->IndexOf(xl);
    if (!xi.has_value()) {
      return UnknownLabelError(
          absl::StrCat("line ", number, ": state '", xl, "'"));
    }
    if (zl.empty()) return LineError(number, "empty third-party label");
    auto [it, inserted] = z_index.emplace(zl, z_labels.size());
    if (inserted) z_labels.push_back(zl);
    absl::StatusOr<Rat> p =
        ParseRat(absl::StripAsciiWhitespace(line.substr(colon + 1)));
    if (!p.ok()) return LineError(number, p.status().message());
    entries.push_back({*xi, it->second, *std::move(p)});
  }
  if (entries.empty()) return absl::InvalidArgumentError("empty prior file");
  ASSIGN_OR_RETURN(SpacePtr z, StateSpace::Create(z_labels));
  SpacePtr product = ProductSpace(x, z);
  std::vector<Rat> dense(product->size());
  for (const Entry& e : entries) dense[e.x * z->size() + e.z] += e.p;
  ASSIGN_OR_RETURN(Dist joint, Dist::FromDense(product, dense));
  return CorrelatedPrior{z, std::move(joint)};
}

std::string WriteRefinementMatrix(const RefinementMatrix& r) {
  std::string out = "# rows: inners of the specification\n";
  for (size_t s = 0; s < r.rows().size(); ++s) {
    absl::StrAppend(&out, "#   s", s, " = ", r.rows()[s].DebugString(), "\n");
  }
  out += "# columns: inners of the implementation\n";
  for (size_t i = 0; i < r.cols().size(); ++i) {
    absl::StrAppend(&out, "#   i", i, " = ", r.cols()[i].DebugString(), "\n");
  }
  for (size_t s = 0; s < r.rows().size(); ++s) {
    absl::StrAppend(&out, "s", s, ":");
    for (const Rat& v : r.entries()[s]) {
      absl::StrAppend(&out, " ", FormatRat(v));
    }
    out += "\n";
  }
  return out;
}

}  // namespace hyperflow
