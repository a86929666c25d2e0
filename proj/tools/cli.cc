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

#include "cli.h"

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hyperflow/abstract_hmm.h"
#include "hyperflow/dalenius.h"
#include "hyperflow/elaborate.h"
#include "hyperflow/formats.h"
#include "hyperflow/parser.h"
#include "hyperflow/random.h"
#include "hyperflow/refinement.h"
#include "hyperflow/status_macros.h"
#include "hyperflow/uncertainty.h"

namespace hyperflow::cli {
namespace {

constexpr uint64_t kDefaultSeed = 20180903;

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read '", path, "'"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", path, "'"));
  }
  out << content;
  return absl::OkStatus();
}

struct Loaded {
  Elaborated program;
  Dist prior;
};

absl::StatusOr<Loaded> Load(const std::string& path,
                            const std::string& prior_override) {
  ASSIGN_OR_RETURN(std::string source, ReadFile(path));
  absl::StatusOr<Program> ast = Parse(source);
  if (!ast.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ":", ast.status().message()));
  }
  absl::StatusOr<Elaborated> e = Elaborate(*ast);
  if (!e.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ":", e.status().message()));
  }
  Dist prior = e->prior;
  if (!prior_override.empty()) {
    absl::StatusOr<PriorDecl> decl = ParsePrior(prior_override);
    if (!decl.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--prior: ", decl.status().message()));
    }
    ASSIGN_OR_RETURN(prior, ResolvePrior(*decl, e->env));
  }
  return Loaded{*std::move(e), std::move(prior)};
}

// Output hyper of a program at `prior`, or the hyper of its joint matrix.
absl::StatusOr<Hyper> OutputHyper(const Elaborated& e, const Dist& prior) {
  if (e.joint.has_value()) return AbstractJoint(*e.joint);
  return e.hmm.Evaluate(prior);
}

NumberFormat MakeFormat(bool dec, int digits) {
  NumberFormat f;
  f.decimal = dec;
  f.digits = digits;
  return f;
}

// Options shared by the subcommands.
struct Options {
  std::string program;
  std::string program_b;
  std::string prior;
  bool json = false;
  bool frac = false;
  bool dec = false;
  int digits = 4;
  std::string measure = "shannon";
  std::string loss;
  bool emit_pre_loss = false;
  std::string out_path;
  int random_priors = 0;
  std::string witness_out;
  std::string separator_out;
  std::string corr;
};

absl::StatusOr<int> CmdRun(const Options& o, std::ostream& out) {
  ASSIGN_OR_RETURN(Loaded l, Load(o.program, o.prior));
  ASSIGN_OR_RETURN(Hyper h, OutputHyper(l.program, l.prior));
  if (o.json) {
    out << RenderHyperJson(h);
  } else {
    out << RenderHyper(h, MakeFormat(o.dec, o.digits));
  }
  return kOk;
}

absl::StatusOr<UncertaintyMeasure> MeasureFor(const std::string& spec,
                                              const SpacePtr& space) {
  if (spec == "shannon") return UncertaintyMeasure::Shannon();
  if (spec == "bayes") return UncertaintyMeasure::BayesComplement();
  if (spec == "guessing") return UncertaintyMeasure::Guessing();
  if (absl::StartsWith(spec, "loss:")) {
    ASSIGN_OR_RETURN(std::string text, ReadFile(spec.substr(5)));
    ASSIGN_OR_RETURN(LossFunction l, ParseLossFile(text, space));
    return UncertaintyMeasure::Loss(std::move(l));
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown measure '", spec, "' (shannon, bayes, guessing, loss:<file>)"));
}

absl::StatusOr<int> CmdLeakage(const Options& o, std::ostream& out) {
  ASSIGN_OR_RETURN(Loaded l, Load(o.program, o.prior));
  if (l.program.joint.has_value()) {
    return absl::InvalidArgumentError("leakage needs a program, not a joint");
  }
  ASSIGN_OR_RETURN(UncertaintyMeasure u,
                   MeasureFor(o.measure, l.program.env.space));
  ASSIGN_OR_RETURN(LeakageReport r, Leakage(l.program.hmm, l.prior, u));
  const NumberFormat f = MakeFormat(o.dec, o.digits);
  auto approx = [&](double v) { return absl::StrFormat("%.*f", o.digits, v); };

  out << "measure    " << u.name() << "\n";
  if (u.kind() == UncertaintyMeasure::Kind::kBayesComplement) {
    // Reported as vulnerability, the maximum inner probability.
    const Rat prior_v = 1 - *r.prior_exact;
    const Rat post_v = 1 - *r.posterior_exact;
    out << "prior      " << FormatNumber(prior_v, f) << "\n"
        << "posterior  " << FormatNumber(post_v, f) << "\n"
        << "leakage    " << FormatNumber(post_v - prior_v, f) << "\n";
  } else if (r.prior_exact.has_value()) {
    out << "prior      " << FormatNumber(*r.prior_exact, f) << "\n"
        << "posterior  " << FormatNumber(*r.posterior_exact, f) << "\n"
        << "leakage    " << FormatNumber(*r.leak_exact, f) << "\n";
  } else {
    out << "prior      " << approx(r.prior) << "\n"
        << "posterior  " << approx(r.posterior) << "\n"
        << "leakage    " << approx(r.leak) << "\n";
  }
  return kOk;
}

absl::StatusOr<int> CmdRefine(const Options& o, std::ostream& out) {
  ASSIGN_OR_RETURN(Loaded a, Load(o.program, o.prior));
  ASSIGN_OR_RETURN(Loaded b, Load(o.program_b, ""));
  if (!SameSpace(a.program.env.space, b.program.env.space)) {
    return SpaceMismatchError("programs have different state spaces");
  }
  const bool both_joint =
      a.program.joint.has_value() && b.program.joint.has_value();
  std::vector<Dist> priors = {a.prior};
  if (!both_joint && o.random_priors > 0) {
    std::mt19937_64 rng(SeedFromEnv(kDefaultSeed));
    for (int k = 0; k < o.random_priors; ++k) {
      priors.push_back(RandomDist(rng, a.program.env.space));
    }
  }

  std::optional<RefinementResult> verdict;
  std::optional<Hyper> spec, impl;
  const Dist* at = nullptr;
  for (const Dist& p : priors) {
    ASSIGN_OR_RETURN(Hyper hs, OutputHyper(a.program, p));
    ASSIGN_OR_RETURN(Hyper hi, OutputHyper(b.program, p));
    ASSIGN_OR_RETURN(RefinementResult r, CheckRefinement(hs, hi));
    const bool refines = r.refines();
    if (!verdict.has_value() || !refines) {
      verdict = std::move(r);
      spec = std::move(hs);
      impl = std::move(hi);
      at = &p;
    }
    if (!refines) break;
  }

  if (verdict->refines()) {
    out << "REFINES\n";
    if (priors.size() > 1) {
      out << "checked at " << priors.size() << " priors\n";
    }
    if (!o.witness_out.empty()) {
      RETURN_IF_ERROR(
          WriteFile(o.witness_out, WriteRefinementMatrix(*verdict->matrix)));
    }
    return kOk;
  }

  out << "NOT-REFINES\n";
  if (!both_joint) out << "prior      " << at->DebugString() << "\n";
  const LossFunction& sep = *verdict->separator;
  const UncertaintyMeasure u = UncertaintyMeasure::Loss(sep);
  const Rat es = Expect(*spec, [&](const Dist& d) { return *u.Exact(d); });
  const Rat ei = Expect(*impl, [&](const Dist& d) { return *u.Exact(d); });
  out << "separator  E_spec = " << FormatRat(es)
      << ", E_impl = " << FormatRat(ei) << "\n";
  if (!o.separator_out.empty()) {
    RETURN_IF_ERROR(WriteFile(o.separator_out, WriteLossFile(sep)));
  }
  return kNotRefines;
}

absl::StatusOr<int> CmdWp(const Options& o, std::ostream& out) {
  ASSIGN_OR_RETURN(Loaded l, Load(o.program, o.prior));
  if (l.program.joint.has_value()) {
    return absl::InvalidArgumentError("wp needs a program, not a joint");
  }
  ASSIGN_OR_RETURN(std::string text, ReadFile(o.loss));
  ASSIGN_OR_RETURN(LossFunction loss, ParseLossFile(text, l.program.env.space));
  if (o.emit_pre_loss) {
    ASSIGN_OR_RETURN(LossFunction pre, WpLoss(l.program.hmm, loss));
    const std::string file = WriteLossFile(pre);
    if (o.out_path.empty()) {
      out << file;
    } else {
      RETURN_IF_ERROR(WriteFile(o.out_path, file));
    }
    return kOk;
  }
  ASSIGN_OR_RETURN(Rat v,
                   Wp(l.program.hmm, UncertaintyMeasure::Loss(loss), l.prior));
  out << FormatNumber(v, MakeFormat(o.dec, o.digits)) << "\n";
  return kOk;
}

std::string DescribeZ(const Dist& z) {
  const auto& e = z.entries();
  if (e.size() == 1)
    return absl::StrCat(z.space()->label(e[0].first), " certain");
  if (e.size() == 2) {
    const bool first = e[0].second >= e[1].second;
    const auto& hi = first ? e[0] : e[1];
    const auto& lo = first ? e[1] : e[0];
    const Rat ratio = hi.second / lo.second;
    return absl::StrCat("odds ", ratio.get_num().get_str(), ":",
                        ratio.get_den().get_str(), " for ",
                        z.space()->label(hi.first));
  }
  return absl::StrCat("posterior ", z.DebugString());
}

absl::StatusOr<int> CmdDalenius(const Options& o, std::ostream& out) {
  ASSIGN_OR_RETURN(Loaded l, Load(o.program, o.prior));
  if (l.program.joint.has_value()) {
    return absl::InvalidArgumentError("dalenius needs a program, not a joint");
  }
  const SpacePtr& x = l.program.env.space;
  SpacePtr z;
  std::optional<Dist> joint;
  if (o.corr.empty()) {
    // Z is a copy of the initial state.
    z = x;
    SpacePtr product = ProductSpace(x, z);
    std::vector<Dist::Entry> entries;
    for (const auto& [i, p] : l.prior.entries()) {
      entries.emplace_back(i * z->size() + i, p);
    }
    joint = Dist::Unchecked(product, std::move(entries));
  } else {
    ASSIGN_OR_RETURN(std::string text, ReadFile(o.corr));
    ASSIGN_OR_RETURN(CorrelatedPrior c, ParseCorrelatedPrior(text, x));
    z = c.z;
    joint = std::move(c.joint);
  }
  ASSIGN_OR_RETURN(DaleniusResult r,
                   DaleniusAnalysis(l.program.hmm, z, *joint));
  const NumberFormat f = MakeFormat(o.dec, o.digits);
  out << "product hyper\n" << RenderHyper(r.product, f) << "\n";
  out << "third-party hyper\n" << RenderHyper(r.z_hyper, f) << "\n";
  if (r.z_hyper.size() == 1) {
    out << "no Dalenius leakage\n";
    return kOk;
  }
  for (const ObservationPosterior& p : r.by_observation) {
    out << p.observation.ToString() << " (" << FormatNumber(p.probability, f)
        << "): " << DescribeZ(p.z_posterior) << "\n";
  }
  return kOk;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kOk;
  if (status.code() == absl::StatusCode::kFailedPrecondition) return kMismatch;
  return kUsage;
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  Options o;
  CLI::App app{"Hidden-state information flow analysis"};
  app.name(args.empty() ? "hyperflow" : args[0]);
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_flag("--frac", o.frac, "Exact fractions (default)");
    cmd->add_flag("--dec", o.dec, "Decimals, rounded half to even");
    cmd->add_option("--digits", o.digits, "Decimal digits")
        ->check(CLI::Range(0, 30));
  };
  auto add_prior = [&](CLI::App* cmd) {
    cmd->add_option("--prior", o.prior,
                    "Prior: a name, (p, ...) or {label: p, ...}");
  };

  CLI::App* run = app.add_subcommand("run", "Print the output hyper");
  run->add_option("program", o.program)->required();
  add_prior(run);
  add_format(run);
  run->add_flag("--json", o.json, "JSON output");

  CLI::App* leakage = app.add_subcommand("leakage", "Prior/posterior report");
  leakage->add_option("program", o.program)->required();
  add_prior(leakage);
  add_format(leakage);
  leakage->add_option("--measure", o.measure,
                      "shannon | bayes | guessing | loss:<file>");

  CLI::App* refine = app.add_subcommand("refine", "Decide A refined-by B");
  refine->add_option("spec", o.program)->required();
  refine->add_option("impl", o.program_b)->required();
  add_prior(refine);
  refine
      ->add_option("--random-priors", o.random_priors,
                   "Also check at k random priors")
      ->check(CLI::NonNegativeNumber);
  refine->add_option("--witness-out", o.witness_out, "Write R here");
  refine->add_option("--separator-out", o.separator_out,
                     "Write the separating loss here");

  CLI::App* wp = app.add_subcommand("wp", "Weakest pre-uncertainty");
  wp->add_option("program", o.program)->required();
  wp->add_option("--loss", o.loss, "Post loss file")->required();
  add_prior(wp);
  add_format(wp);
  CLI::Option* emit =
      wp->add_flag("--emit-pre-loss", o.emit_pre_loss, "Write the pre-loss");
  wp->add_option("--out", o.out_path, "Output file for --emit-pre-loss")
      ->needs(emit);

  CLI::App* dalenius =
      app.add_subcommand("dalenius", "Leakage about correlated data");
  dalenius->add_option("program", o.program)->required();
  add_prior(dalenius);
  add_format(dalenius);
  dalenius->add_option("--corr", o.corr, "Correlated prior file");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("hyperflow");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (o.frac && o.dec) {
    err << "error: --frac and --dec are exclusive\n";
    return kUsage;
  }

  absl::StatusOr<int> result;
  if (run->parsed()) {
    result = CmdRun(o, out);
  } else if (leakage->parsed()) {
    result = CmdLeakage(o, out);
  } else if (refine->parsed()) {
    result = CmdRefine(o, out);
  } else if (wp->parsed()) {
    result = CmdWp(o, out);
  } else {
    result = CmdDalenius(o, out);
  }
  if (!result.ok()) {
    err << "error: " << result.status().message() << "\n";
    return ExitCodeFor(result.status());
  }
  return *result;
}

}  // namespace hyperflow::cli
