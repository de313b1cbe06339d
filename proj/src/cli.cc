// Copyright 2026 The dpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpa/cli.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpa/attack.h"
#include "dpa/composition.h"
#include "dpa/cost.h"
#include "dpa/divergences.h"
#include "dpa/io.h"
#include "dpa/mechanisms.h"
#include "dpa/noise_distribution.h"
#include "dpa/optimize.h"
#include "dpa/pld.h"
#include "dpa/status_macros.h"
#include "dpa/tradeoff.h"

namespace dpa {
namespace {

struct GlobalFlags {
  double grid_spacing = kDefaultGridSpacing;
  double tail_mass_bound = kDefaultTailMassBound;
  std::string rounding = "pessimistic";
  std::string placement = "boundary";
  uint64_t seed = 0;
  std::string out;
  // Empty selects the natural format: CSV for curves, JSON otherwise.
  std::string format;
};

// What a subcommand produced. A numeric failure may still carry a partial
// result, which is emitted before the run reports the failure.
struct Output {
  explicit Output(std::string text) : text(std::move(text)) {}
  std::string text;
  absl::Status failure;
};

struct MechanismFlags {
  std::string family;
  std::optional<double> sigma;
  std::optional<double> lambda;
  std::optional<double> epsilon;
  std::optional<double> eta;
  double sensitivity = 1.0;
  std::string mech_file;
  std::string noise_file;
};

struct Flags {
  GlobalFlags global;
  MechanismFlags mechanism;
  std::string pld_file;
  std::string reverse_pld_file;
  std::optional<double> epsilon;
  std::optional<double> delta;
  double eps_min = 0;
  double eps_max = 10;
  int points = 0;
  int64_t k = 1;
  std::string method = "fft";
  std::string pld_out;
  bool empirical = false;
  int64_t samples = 1000000;
  std::string claimed_file;
  std::string cost = "quad";
  double budget = 1.0;
  std::optional<double> z_max;
  std::optional<double> spacing;
  std::optional<double> tolerance;
  std::optional<int> max_steps;
  std::optional<double> ode_step;
};

absl::StatusOr<DiscretizationPolicy> Policy(const GlobalFlags& flags) {
  DiscretizationPolicy policy;
  policy.grid_spacing = flags.grid_spacing;
  policy.tail_mass_bound = flags.tail_mass_bound;
  if (flags.rounding == "pessimistic") {
    policy.rounding = EstimateType::kPessimistic;
  } else if (flags.rounding == "optimistic") {
    policy.rounding = EstimateType::kOptimistic;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "--rounding must be pessimistic or optimistic, got ", flags.rounding));
  }
  if (flags.placement == "boundary") {
    policy.placement = CellPlacement::kBoundary;
  } else if (flags.placement == "interpolated") {
    policy.placement = CellPlacement::kInterpolated;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "--placement must be boundary or interpolated, got ", flags.placement));
  }
  RETURN_IF_ERROR(policy.Validate());
  return policy;
}

absl::Status CheckFormat(const GlobalFlags& flags, bool csv_allowed) {
  if (flags.format.empty() || flags.format == "json") return absl::OkStatus();
  if (flags.format == "csv" && csv_allowed) return absl::OkStatus();
  if (flags.format == "csv") {
    return absl::InvalidArgumentError(
        "this subcommand emits a structured object; use --format json");
  }
  return absl::InvalidArgumentError(
      absl::StrCat("--format must be json or csv, got ", flags.format));
}

bool WantsCsv(const GlobalFlags& flags, bool csv_by_default) {
  return flags.format.empty() ? csv_by_default : flags.format == "csv";
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Json> json = ParseJson(text);
  if (!json.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", json.status().message()));
  }
  return json;
}

absl::StatusOr<PrivacyLossDistribution> LoadPld(const std::string& path) {
  if (path.empty()) return absl::InvalidArgumentError("--pld is required");
  ASSIGN_OR_RETURN(Json json, ReadJsonFile(path));
  return PldFromJson(json);
}

absl::StatusOr<MechanismSpec> MechanismFromFlags(const MechanismFlags& flags) {
  if (!flags.mech_file.empty()) {
    ASSIGN_OR_RETURN(Json json, ReadJsonFile(flags.mech_file));
    return MechanismFromJson(json);
  }
  if (flags.family.empty()) {
    return absl::InvalidArgumentError("--family or --mech is required");
  }
  ASSIGN_OR_RETURN(MechanismFamily family, ParseFamily(flags.family));
  auto need = [](const std::optional<double>& value,
                 const char* name) -> absl::StatusOr<double> {
    if (!value.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat("--", name, " is required"));
    }
    return *value;
  };
  switch (family) {
    case MechanismFamily::kGaussian: {
      ASSIGN_OR_RETURN(double sigma, need(flags.sigma, "sigma"));
      return MechanismSpec::Gaussian(sigma, flags.sensitivity);
    }
    case MechanismFamily::kLaplace: {
      ASSIGN_OR_RETURN(double lambda, need(flags.lambda, "lambda"));
      return MechanismSpec::Laplace(lambda, flags.sensitivity);
    }
    case MechanismFamily::kStaircase: {
      ASSIGN_OR_RETURN(double epsilon, need(flags.epsilon, "epsilon"));
      ASSIGN_OR_RETURN(double eta, need(flags.eta, "eta"));
      return MechanismSpec::Staircase(epsilon, eta, flags.sensitivity);
    }
    case MechanismFamily::kRandomizedResponse: {
      ASSIGN_OR_RETURN(double epsilon, need(flags.epsilon, "epsilon"));
      return MechanismSpec::RandomizedResponse(epsilon);
    }
  }
  return absl::InvalidArgumentError("unknown mechanism family");
}

// PLD of a mechanism given on the command line, by spec or by a noise file.
absl::StatusOr<PrivacyLossDistribution> PldFromFlags(const Flags& flags) {
  ASSIGN_OR_RETURN(DiscretizationPolicy policy, Policy(flags.global));
  if (!flags.mechanism.noise_file.empty()) {
    ASSIGN_OR_RETURN(Json json, ReadJsonFile(flags.mechanism.noise_file));
    ASSIGN_OR_RETURN(NoiseDistribution noise, NoiseFromJson(json));
    ASSIGN_OR_RETURN(int64_t shift, LatticeCells(flags.mechanism.sensitivity,
                                                 noise.grid_spacing()));
    return noise.Pld(shift, policy);
  }
  ASSIGN_OR_RETURN(MechanismSpec spec, MechanismFromFlags(flags.mechanism));
  return MechanismPld(spec, policy);
}

BoundKind PldBoundKind(const PrivacyLossDistribution& pld) {
  return pld.pessimistic() ? BoundKind::kUpper : BoundKind::kLower;
}

Json GuaranteeJson(const PrivacyGuarantee& guarantee) {
  Json json;
  json["epsilon"] = guarantee.epsilon;
  json["delta"] = guarantee.delta;
  json["bound"] = std::string(BoundKindName(guarantee.bound_kind));
  return json;
}

absl::StatusOr<Output> GuaranteeOutput(const GlobalFlags& flags,
                                       const PrivacyGuarantee& guarantee) {
  RETURN_IF_ERROR(CheckFormat(flags, /*csv_allowed=*/true));
  if (WantsCsv(flags, false)) {
    return Output{PrivacyCurveToCsv({&guarantee, 1})};
  }
  return Output{DumpJson(GuaranteeJson(guarantee))};
}

absl::StatusOr<Output> RunMechPld(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  ASSIGN_OR_RETURN(PrivacyLossDistribution pld, PldFromFlags(flags));
  return Output{DumpJson(PldToJson(pld))};
}

absl::StatusOr<Output> RunMechSpec(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  ASSIGN_OR_RETURN(MechanismSpec spec, MechanismFromFlags(flags.mechanism));
  return Output{DumpJson(MechanismToJson(spec))};
}

absl::StatusOr<Output> RunDelta(const Flags& flags) {
  if (!flags.epsilon.has_value()) {
    return absl::InvalidArgumentError("--eps is required");
  }
  ASSIGN_OR_RETURN(PrivacyLossDistribution pld, LoadPld(flags.pld_file));
  return GuaranteeOutput(flags.global,
                         {*flags.epsilon, HockeyStick(pld, *flags.epsilon),
                          PldBoundKind(pld)});
}

absl::StatusOr<Output> RunEpsilon(const Flags& flags) {
  if (!flags.delta.has_value()) {
    return absl::InvalidArgumentError("--delta is required");
  }
  ASSIGN_OR_RETURN(PrivacyLossDistribution pld, LoadPld(flags.pld_file));
  ASSIGN_OR_RETURN(double epsilon, EpsilonAtDelta(pld, *flags.delta));
  return GuaranteeOutput(flags.global,
                         {epsilon, *flags.delta, PldBoundKind(pld)});
}

absl::StatusOr<Output> RunDeltaCurve(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/true));
  const int points = flags.points == 0 ? 101 : flags.points;
  if (points < 2 || !(flags.eps_max >= flags.eps_min)) {
    return absl::InvalidArgumentError(
        "need --points >= 2 and --eps-max >= --eps-min");
  }
  ASSIGN_OR_RETURN(PrivacyLossDistribution pld, LoadPld(flags.pld_file));
  std::vector<double> epsilons(points);
  for (int i = 0; i < points; ++i) {
    epsilons[i] = flags.eps_min +
                  (flags.eps_max - flags.eps_min) * i / (points - 1.0);
  }
  const std::vector<double> deltas = HockeyStickCurve(pld, epsilons);
  std::vector<PrivacyGuarantee> curve;
  for (int i = 0; i < points; ++i) {
    curve.push_back({epsilons[i], deltas[i], PldBoundKind(pld)});
  }
  if (WantsCsv(flags.global, true)) return Output{PrivacyCurveToCsv(curve)};
  Json json = Json::array();
  for (const PrivacyGuarantee& point : curve) json.push_back(GuaranteeJson(point));
  return Output{DumpJson(json)};
}

absl::StatusOr<Output> RunTradeoff(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/true));
  const int points = flags.points == 0 ? kDefaultCurveGridPoints : flags.points;
  if (points < 2) return absl::InvalidArgumentError("--points must be >= 2");
  std::optional<TradeoffCurve> curve;
  if (flags.empirical) {
    ASSIGN_OR_RETURN(MechanismSpec spec, MechanismFromFlags(flags.mechanism));
    ASSIGN_OR_RETURN(curve, EmpiricalTradeoff(spec, flags.samples,
                                              flags.global.seed));
  } else if (!flags.pld_file.empty()) {
    ASSIGN_OR_RETURN(PrivacyLossDistribution forward, LoadPld(flags.pld_file));
    if (flags.reverse_pld_file.empty()) {
      curve = TradeoffFromPld(forward, forward);
    } else {
      ASSIGN_OR_RETURN(PrivacyLossDistribution reverse,
                       LoadPld(flags.reverse_pld_file));
      curve = TradeoffFromPld(forward, reverse);
    }
  } else {
    // The mechanisms here have the same PLD in both directions.
    ASSIGN_OR_RETURN(PrivacyLossDistribution pld, PldFromFlags(flags));
    curve = TradeoffFromPld(pld, pld);
  }
  const std::vector<CurvePoint> samples = curve->Sample(points);
  if (WantsCsv(flags.global, true)) return Output{TradeoffToCsv(samples)};
  Json json = Json::array();
  for (const CurvePoint& point : samples) {
    Json item;
    item["p_fa"] = point.p_fa;
    item["p_md_lower"] = point.p_md;
    json.push_back(std::move(item));
  }
  return Output{DumpJson(json)};
}

absl::StatusOr<Output> RunCompose(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/true));
  if (flags.epsilon.has_value() == flags.delta.has_value()) {
    return absl::InvalidArgumentError("give exactly one of --eps and --delta");
  }
  if (flags.k < 1) return absl::InvalidArgumentError("--k must be >= 1");
  ASSIGN_OR_RETURN(PrivacyLossDistribution pld, LoadPld(flags.pld_file));
  const BoundKind accountant_bound =
      pld.pessimistic() ? BoundKind::kUpper : BoundKind::kEstimate;
  PrivacyGuarantee guarantee;
  if (flags.method == "fft") {
    CompositionOptions options;
    options.tail_mass_bound = flags.global.tail_mass_bound;
    ASSIGN_OR_RETURN(PrivacyLossDistribution composed,
                     FftSelfCompose(pld, flags.k, options));
    if (!flags.pld_out.empty()) {
      RETURN_IF_ERROR(WriteFile(flags.pld_out, DumpJson(PldToJson(composed))));
    }
    guarantee.bound_kind = PldBoundKind(composed);
    if (flags.epsilon.has_value()) {
      guarantee.epsilon = *flags.epsilon;
      guarantee.delta = HockeyStick(composed, *flags.epsilon);
    } else {
      guarantee.delta = *flags.delta;
      ASSIGN_OR_RETURN(guarantee.epsilon, EpsilonAtDelta(composed, *flags.delta));
    }
  } else if (flags.method == "basic") {
    guarantee.bound_kind = accountant_bound;
    if (flags.epsilon.has_value()) {
      guarantee.epsilon = *flags.epsilon;
      guarantee.delta = BasicComposeDelta(pld, flags.k, *flags.epsilon);
    } else {
      guarantee.delta = *flags.delta;
      ASSIGN_OR_RETURN(guarantee.epsilon,
                       BasicComposeEpsilon(pld, flags.k, *flags.delta));
    }
  } else if (flags.method == "rdp") {
    const std::vector<double> alphas = DefaultRdpOrders();
    guarantee = flags.epsilon.has_value()
                    ? RdpCompose(pld, flags.k, alphas, *flags.epsilon)
                    : RdpComposeEpsilon(pld, flags.k, alphas, *flags.delta);
    guarantee.bound_kind = accountant_bound;
  } else if (flags.method == "clt") {
    if (flags.epsilon.has_value()) {
      ASSIGN_OR_RETURN(guarantee, CltCompose(pld, flags.k, *flags.epsilon));
    } else {
      ASSIGN_OR_RETURN(guarantee, CltComposeEpsilon(pld, flags.k, *flags.delta));
    }
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "--method must be fft, basic, rdp or clt, got ", flags.method));
  }
  if (WantsCsv(flags.global, false)) {
    return Output{PrivacyCurveToCsv({&guarantee, 1})};
  }
  Json json;
  json["epsilon"] = guarantee.epsilon;
  json["delta"] = guarantee.delta;
  json["method"] = flags.method;
  json["k"] = flags.k;
  json["bound"] = std::string(BoundKindName(guarantee.bound_kind));
  return Output{DumpJson(json)};
}

absl::StatusOr<CostSpec> CostFromFlags(const Flags& flags) {
  ASSIGN_OR_RETURN(CostFunction cost, CostFunction::FromName(flags.cost));
  return CostSpec{std::move(cost), flags.budget};
}

absl::StatusOr<Output> RunOptimizeStaircase(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  if (!flags.mechanism.epsilon.has_value()) {
    return absl::InvalidArgumentError("--eps is required");
  }
  ASSIGN_OR_RETURN(CostFunction cost, CostFunction::FromName(flags.cost));
  const double epsilon = *flags.mechanism.epsilon;
  ASSIGN_OR_RETURN(StaircaseFit fit,
                   FitStaircase(epsilon, flags.mechanism.sensitivity, cost));
  ASSIGN_OR_RETURN(MechanismSpec spec,
                   MechanismSpec::Staircase(epsilon, fit.eta,
                                            flags.mechanism.sensitivity));
  Json json;
  json["mechanism"] = MechanismToJson(spec);
  json["cost"] = cost.name();
  json["eta"] = fit.eta;
  json["expected_cost"] = fit.expected_cost;
  return Output{DumpJson(json)};
}

absl::StatusOr<Output> RunOptimizeCactus(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  ASSIGN_OR_RETURN(CostSpec cost, CostFromFlags(flags));
  CactusOptions options;
  if (flags.z_max.has_value()) options.z_max = *flags.z_max;
  if (flags.spacing.has_value()) options.spacing = *flags.spacing;
  if (flags.tolerance.has_value()) options.tolerance = *flags.tolerance;
  if (flags.max_steps.has_value()) options.max_newton_steps = *flags.max_steps;
  ASSIGN_OR_RETURN(CactusResult result,
                   SolveCactus(flags.mechanism.sensitivity, cost, options));
  Json json = NoiseToJson(result.noise);
  Json solver;
  solver["method"] = "cactus";
  solver["sensitivity"] = flags.mechanism.sensitivity;
  solver["cost"] = cost.cost.name();
  solver["budget"] = cost.budget;
  solver["objective"] = result.objective;
  solver["expected_cost"] = result.expected_cost;
  solver["converged"] = result.converged;
  solver["newton_steps"] = result.newton_steps;
  json["solver"] = std::move(solver);
  Output output{DumpJson(json)};
  if (!result.converged) {
    output.failure = NotConvergedError(absl::StrFormat(
        "cactus solver stopped after %d Newton steps; partial result written",
        result.newton_steps));
  }
  return output;
}

absl::StatusOr<Output> RunOptimizeSchrodinger(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  ASSIGN_OR_RETURN(CostSpec cost, CostFromFlags(flags));
  SchrodingerOptions options;
  if (flags.z_max.has_value()) options.z_max = *flags.z_max;
  if (flags.ode_step.has_value()) options.ode_step = *flags.ode_step;
  ASSIGN_OR_RETURN(SchrodingerResult result, SolveSchrodinger(cost, options));
  Json json = NoiseToJson(result.noise);
  Json solver;
  solver["method"] = "schrodinger";
  solver["cost"] = cost.cost.name();
  solver["budget"] = cost.budget;
  solver["theta"] = result.theta;
  solver["energy"] = result.energy;
  solver["expected_cost"] = result.expected_cost;
  json["solver"] = std::move(solver);
  return Output{DumpJson(json)};
}

absl::StatusOr<Output> RunAttackCommand(const Flags& flags) {
  RETURN_IF_ERROR(CheckFormat(flags.global, /*csv_allowed=*/false));
  if (flags.mechanism.mech_file.empty() || flags.claimed_file.empty()) {
    return absl::InvalidArgumentError("--mech and --claimed are required");
  }
  ASSIGN_OR_RETURN(MechanismSpec spec, MechanismFromFlags(flags.mechanism));
  ASSIGN_OR_RETURN(std::string claimed_text, ReadFile(flags.claimed_file));
  ASSIGN_OR_RETURN(TradeoffCurve claimed, TradeoffFromCsv(claimed_text));
  ASSIGN_OR_RETURN(AttackReport report,
                   RunAttack(spec, claimed, flags.samples, flags.global.seed));
  return Output{DumpJson(AttackReportToJson(report))};
}

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kFailedPrecondition:
      return kExitValidationError;
    default:
      return kExitNumericFailure;
  }
}

void AddMechanismOptions(CLI::App* command, MechanismFlags& flags) {
  command->add_option("--family", flags.family,
                      "gaussian, laplace, staircase or randomized_response");
  command->add_option("--sigma", flags.sigma, "Gaussian noise scale");
  command->add_option("--lambda", flags.lambda, "Laplace rate");
  command->add_option("--epsilon,--eps", flags.epsilon,
                      "staircase or randomized-response epsilon");
  command->add_option("--eta", flags.eta, "staircase band parameter");
  command->add_option("--sensitivity", flags.sensitivity, "query sensitivity");
  command->add_option("--mech", flags.mech_file, "mechanism JSON file");
}

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  Flags flags;
  bool show_version = false;
  CLI::App app{"Differential-privacy accounting and mechanism design."};
  app.name("dpa");
  app.fallthrough();
  app.add_flag("--version", show_version,
               "print the version and the default discretization policy");
  app.add_option("--grid-spacing", flags.global.grid_spacing,
                 "PLD grid spacing in nats");
  app.add_option("--tail-mass-bound", flags.global.tail_mass_bound,
                 "mass allowed to be truncated from PLD tails");
  app.add_option("--rounding", flags.global.rounding,
                 "pessimistic or optimistic");
  app.add_option("--placement", flags.global.placement,
                 "boundary or interpolated");
  app.add_option("--seed", flags.global.seed, "random seed");
  app.add_option("--out", flags.global.out, "output file (default stdout)");
  app.add_option("--format", flags.global.format, "json or csv");

  CLI::App* mech = app.add_subcommand("mech", "mechanism artifacts");
  mech->require_subcommand(1);
  CLI::App* mech_pld = mech->add_subcommand("pld", "PLD of a mechanism");
  AddMechanismOptions(mech_pld, flags.mechanism);
  mech_pld->add_option("--noise", flags.mechanism.noise_file,
                       "noise distribution JSON (from optimize)");
  CLI::App* mech_spec = mech->add_subcommand("spec", "mechanism JSON");
  AddMechanismOptions(mech_spec, flags.mechanism);

  CLI::App* delta = app.add_subcommand("delta", "delta at epsilon");
  delta->add_option("--pld", flags.pld_file, "PLD JSON file");
  delta->add_option("--eps", flags.epsilon, "epsilon");

  CLI::App* epsilon = app.add_subcommand("epsilon", "epsilon at delta");
  epsilon->add_option("--pld", flags.pld_file, "PLD JSON file");
  epsilon->add_option("--delta", flags.delta, "delta");

  CLI::App* delta_curve =
      app.add_subcommand("delta-curve", "delta over an epsilon grid");
  delta_curve->add_option("--pld", flags.pld_file, "PLD JSON file");
  delta_curve->add_option("--eps-min", flags.eps_min, "first epsilon");
  delta_curve->add_option("--eps-max", flags.eps_max, "last epsilon");
  delta_curve->add_option("--points", flags.points, "grid size (default 101)");

  CLI::App* tradeoff = app.add_subcommand("tradeoff", "tradeoff curve");
  AddMechanismOptions(tradeoff, flags.mechanism);
  tradeoff->add_option("--noise", flags.mechanism.noise_file,
                       "noise distribution JSON");
  tradeoff->add_option("--pld", flags.pld_file, "PLD of P against Q");
  tradeoff->add_option("--reverse-pld", flags.reverse_pld_file,
                       "PLD of Q against P (default: same as --pld)");
  tradeoff->add_option("--points", flags.points, "samples of the curve");
  tradeoff->add_flag("--empirical", flags.empirical,
                     "Monte-Carlo curve of the mechanism");
  tradeoff->add_option("--samples", flags.samples, "samples per hypothesis");

  CLI::App* compose = app.add_subcommand("compose", "k-fold composition");
  compose->add_option("--pld", flags.pld_file, "PLD JSON file");
  compose->add_option("--k", flags.k, "number of copies");
  compose->add_option("--method", flags.method, "fft, basic, rdp or clt");
  compose->add_option("--eps", flags.epsilon, "epsilon");
  compose->add_option("--delta", flags.delta, "delta");
  compose->add_option("--pld-out", flags.pld_out,
                      "write the composed PLD (fft only)");

  CLI::App* optimize = app.add_subcommand("optimize", "noise optimization");
  optimize->require_subcommand(1);
  CLI::App* staircase = optimize->add_subcommand("staircase", "staircase fit");
  staircase->add_option("--eps,--epsilon", flags.mechanism.epsilon, "epsilon");
  staircase->add_option("--sensitivity", flags.mechanism.sensitivity,
                        "query sensitivity");
  staircase->add_option("--cost", flags.cost, "quad or abs");
  CLI::App* cactus = optimize->add_subcommand("cactus", "minimax-KL noise");
  cactus->add_option("--sensitivity", flags.mechanism.sensitivity,
                     "query sensitivity");
  cactus->add_option("--cost", flags.cost, "quad or abs");
  cactus->add_option("--budget", flags.budget, "expected-cost budget");
  cactus->add_option("--zmax", flags.z_max, "half-width of the lattice core");
  cactus->add_option("--spacing", flags.spacing, "lattice spacing");
  cactus->add_option("--tolerance", flags.tolerance, "duality-gap target");
  cactus->add_option("--max-steps", flags.max_steps, "Newton step cap");
  CLI::App* schrodinger =
      optimize->add_subcommand("schrodinger", "ground-state noise");
  schrodinger->add_option("--cost", flags.cost, "quad or abs");
  schrodinger->add_option("--budget", flags.budget, "expected-cost budget");
  schrodinger->add_option("--zmax", flags.z_max, "integration boundary");
  schrodinger->add_option("--ode-step", flags.ode_step, "integration step");

  CLI::App* attack = app.add_subcommand("attack", "likelihood-ratio attack");
  attack->add_option("--mech", flags.mechanism.mech_file, "mechanism JSON");
  attack->add_option("--claimed", flags.claimed_file,
                     "claimed tradeoff CSV (p_fa,p_md_lower)");
  attack->add_option("--samples", flags.samples, "samples per hypothesis");
  attack->add_option("--report", flags.global.out, "report JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dpa: " << e.what() << "\n";
    return kExitValidationError;
  }

  if (show_version) {
    const DiscretizationPolicy policy;
    out << "dpa " << kVersion << "\n"
        << "default policy: grid_spacing=" << FormatDouble(policy.grid_spacing)
        << " tail_mass_bound=" << FormatDouble(policy.tail_mass_bound)
        << " rounding=pessimistic placement=boundary\n";
    return kExitOk;
  }

  absl::StatusOr<Output> result;
  if (mech_pld->parsed()) {
    result = RunMechPld(flags);
  } else if (mech_spec->parsed()) {
    result = RunMechSpec(flags);
  } else if (delta->parsed()) {
    result = RunDelta(flags);
  } else if (epsilon->parsed()) {
    result = RunEpsilon(flags);
  } else if (delta_curve->parsed()) {
    result = RunDeltaCurve(flags);
  } else if (tradeoff->parsed()) {
    result = RunTradeoff(flags);
  } else if (compose->parsed()) {
    result = RunCompose(flags);
  } else if (staircase->parsed()) {
    result = RunOptimizeStaircase(flags);
  } else if (cactus->parsed()) {
    result = RunOptimizeCactus(flags);
  } else if (schrodinger->parsed()) {
    result = RunOptimizeSchrodinger(flags);
  } else if (attack->parsed()) {
    result = RunAttackCommand(flags);
  } else {
    err << "dpa: a subcommand is required (see --help)\n";
    return kExitValidationError;
  }

  if (!result.ok()) {
    err << "dpa: " << result.status().ToString() << "\n";
    return ExitCode(result.status());
  }
  if (flags.global.out.empty()) {
    out << result->text;
  } else if (absl::Status written = WriteFile(flags.global.out, result->text);
             !written.ok()) {
    err << "dpa: " << written.ToString() << "\n";
    return kExitValidationError;
  }
  if (!result->failure.ok()) {
    err << "dpa: " << result->failure.ToString() << "\n";
    return ExitCode(result->failure);
  }
  return kExitOk;
}

}  // namespace dpa
