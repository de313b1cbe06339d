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

#include "dpa/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/exp_sinh.hpp"
#include "boost/math/quadrature/gauss_kronrod.hpp"
#include "dpa/status_macros.h"

namespace dpa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckPositive(double value, absl::string_view name) {
  if (!(value > 0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be positive and finite, got %g", name, value));
  }
  return absl::OkStatus();
}

// Staircase band of a non-negative magnitude.
int64_t StaircaseBand(double magnitude, double eta, double s) {
  if (magnitude <= eta) return 0;
  return static_cast<int64_t>(std::ceil((magnitude - eta) / s));
}

// Number of explicitly enumerated staircase bands; mass beyond them is
// handled analytically.
int64_t StaircaseBandCount(double epsilon) {
  return std::clamp<int64_t>(static_cast<int64_t>(std::ceil(60.0 / epsilon)), 2,
                             1 << 20);
}

LossMeasure StaircaseLossMeasure(const MechanismSpec& spec) {
  const double eps = spec.epsilon();
  const double eta = spec.eta();
  const double s = spec.sensitivity();
  const double c = spec.StaircaseHeight();
  const int64_t bands = StaircaseBandCount(eps);
  const double reach = eta + static_cast<double>(bands) * s;

  std::vector<double> cuts = {-reach, reach};
  auto add_cut = [&](double x) {
    if (x > -reach && x < reach) cuts.push_back(x);
  };
  for (int64_t k = 0; k <= bands; ++k) {
    const double edge = eta + static_cast<double>(k) * s;
    for (double x : {edge, -edge, s + edge, s - edge}) add_cut(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Loss is eps * (band(|y - s|) - band(|y|)) in {-eps, 0, eps}.
  double mass[3] = {0, 0, 0};
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double mid = 0.5 * (a + b);
    const int64_t band_p = StaircaseBand(std::abs(mid), eta, s);
    const int64_t band_q = StaircaseBand(std::abs(mid - s), eta, s);
    const int64_t step = std::clamp<int64_t>(band_q - band_p, -1, 1);
    mass[step + 1] +=
        c * std::exp(-static_cast<double>(band_p) * eps) * (b - a);
  }
  const double tail = s * c * std::exp(-static_cast<double>(bands + 1) * eps) /
                      -std::expm1(-eps);
  mass[0] += tail;  // y > reach: the shifted density is one band closer.
  mass[2] += tail;  // y < -reach: the shifted density is one band farther.

  LossMeasure measure;
  measure.atoms = {{-eps, mass[0]}, {0.0, mass[1]}, {eps, mass[2]}};
  return measure;
}

absl::StatusOr<double> QuadratureCost(const MechanismSpec& spec,
                                      const CostFunction& cost) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto integrand = [&](double z) {
    if (z == 0) return 0.0;
    const double density = spec.NoiseDensity(z);
    if (density == 0) return 0.0;
    return (cost(z) + cost(-z)) * density;
  };
  double error = 0;
  double value = 0;
  try {
    value = integrator.integrate(integrand, 0.0, kInf, 1e-12, &error);
  } catch (const std::exception& e) {
    return NonIntegrableError(e.what());
  }
  if (!std::isfinite(value) || error > 1e-8 + 1e-10 * std::abs(value)) {
    return NonIntegrableError(absl::StrFormat(
        "expected cost did not converge (estimate %g, error %g)", value, error));
  }
  return value;
}

absl::StatusOr<double> StaircaseCost(const MechanismSpec& spec,
                                     const CostFunction& cost) {
  const double eps = spec.epsilon();
  const double eta = spec.eta();
  const double s = spec.sensitivity();
  const double c = spec.StaircaseHeight();
  auto band_integral = [&](double a, double b) -> absl::StatusOr<double> {
    if (b <= a) return 0.0;
    if (cost.is_polynomial()) return cost.IntegrateAbsPolynomial(a, b);
    double error = 0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double z) { return cost(z) + cost(-z); }, a, b, 10, 1e-12,
            &error) /
        2;
    if (!std::isfinite(value)) return NonIntegrableError("band cost integral");
    return value;
  };
  ASSIGN_OR_RETURN(double central, band_integral(0.0, eta));
  double total = 2 * c * central;
  const int64_t max_bands = int64_t{1} << 24;
  for (int64_t k = 1; k <= max_bands; ++k) {
    const double a = eta + static_cast<double>(k - 1) * s;
    ASSIGN_OR_RETURN(double band, band_integral(a, a + s));
    const double term = 2 * c * std::exp(-static_cast<double>(k) * eps) * band;
    total += term;
    if (k > 4 && term <= 1e-17 * total) return total;
  }
  return NonIntegrableError("staircase cost series did not converge");
}

}  // namespace

absl::string_view FamilyName(MechanismFamily family) {
  switch (family) {
    case MechanismFamily::kGaussian:
      return "gaussian";
    case MechanismFamily::kLaplace:
      return "laplace";
    case MechanismFamily::kStaircase:
      return "staircase";
    case MechanismFamily::kRandomizedResponse:
      return "randomized_response";
  }
  return "unknown";
}

absl::StatusOr<MechanismFamily> ParseFamily(absl::string_view name) {
  if (name == "gaussian") return MechanismFamily::kGaussian;
  if (name == "laplace") return MechanismFamily::kLaplace;
  if (name == "staircase") return MechanismFamily::kStaircase;
  if (name == "randomized_response" || name == "rr") {
    return MechanismFamily::kRandomizedResponse;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown mechanism family '%s' (expected gaussian, laplace, staircase "
      "or randomized_response)",
      name));
}

absl::StatusOr<MechanismSpec> MechanismSpec::Gaussian(double sigma,
                                                      double sensitivity) {
  RETURN_IF_ERROR(CheckPositive(sigma, "sigma"));
  RETURN_IF_ERROR(CheckPositive(sensitivity, "sensitivity"));
  MechanismSpec spec(MechanismFamily::kGaussian, sensitivity);
  spec.sigma_ = sigma;
  return spec;
}

absl::StatusOr<MechanismSpec> MechanismSpec::Laplace(double lambda,
                                                     double sensitivity) {
  RETURN_IF_ERROR(CheckPositive(lambda, "lambda"));
  RETURN_IF_ERROR(CheckPositive(sensitivity, "sensitivity"));
  MechanismSpec spec(MechanismFamily::kLaplace, sensitivity);
  spec.lambda_ = lambda;
  return spec;
}

absl::StatusOr<MechanismSpec> MechanismSpec::Staircase(double epsilon,
                                                       double eta,
                                                       double sensitivity) {
  RETURN_IF_ERROR(CheckPositive(epsilon, "epsilon"));
  RETURN_IF_ERROR(CheckPositive(sensitivity, "sensitivity"));
  if (!(eta >= 0) || !(eta <= sensitivity)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "eta must lie in [0, sensitivity = %g], got %g", sensitivity, eta));
  }
  MechanismSpec spec(MechanismFamily::kStaircase, sensitivity);
  spec.epsilon_ = epsilon;
  spec.eta_ = eta;
  return spec;
}

absl::StatusOr<MechanismSpec> MechanismSpec::RandomizedResponse(double epsilon) {
  RETURN_IF_ERROR(CheckPositive(epsilon, "epsilon"));
  MechanismSpec spec(MechanismFamily::kRandomizedResponse, 1.0);
  spec.epsilon_ = epsilon;
  return spec;
}

double MechanismSpec::StaircaseHeight() const {
  const double geometric = std::exp(-epsilon_) / -std::expm1(-epsilon_);
  return 1.0 / (2 * eta_ + 2 * sensitivity_ * geometric);
}

double MechanismSpec::NoiseDensity(double z) const {
  switch (family_) {
    case MechanismFamily::kGaussian:
      return std::exp(-0.5 * (z / sigma_) * (z / sigma_)) /
             (sigma_ * std::sqrt(2 * std::numbers::pi));
    case MechanismFamily::kLaplace:
      return 0.5 * lambda_ * std::exp(-lambda_ * std::abs(z));
    case MechanismFamily::kStaircase:
      return StaircaseHeight() *
             std::exp(-static_cast<double>(
                          StaircaseBand(std::abs(z), eta_, sensitivity_)) *
                      epsilon_);
    case MechanismFamily::kRandomizedResponse: {
      const double keep = 1.0 / (1.0 + std::exp(-epsilon_));
      if (z == 0) return keep;
      if (z == 1) return 1 - keep;
      return 0;
    }
  }
  return 0;
}

double MechanismSpec::LogLikelihoodRatio(double y) const {
  const double s = sensitivity_;
  switch (family_) {
    case MechanismFamily::kGaussian:
      return s * (s - 2 * y) / (2 * sigma_ * sigma_);
    case MechanismFamily::kLaplace:
      // Equal to lambda (|y - s| - |y|), but exact on the two flat pieces so
      // that the atoms at +-lambda s are not smeared by rounding.
      return lambda_ * std::clamp(s - 2 * y, -s, s);
    case MechanismFamily::kStaircase:
      return epsilon_ *
             static_cast<double>(StaircaseBand(std::abs(y - s), eta_, s) -
                                 StaircaseBand(std::abs(y), eta_, s));
    case MechanismFamily::kRandomizedResponse:
      return y == 0 ? epsilon_ : -epsilon_;
  }
  return 0;
}

double MechanismSpec::DrawNoise(Rng& rng) const {
  switch (family_) {
    case MechanismFamily::kGaussian:
      return sigma_ * rng.Normal();
    case MechanismFamily::kLaplace:
      return rng.Laplace() / lambda_;
    case MechanismFamily::kStaircase: {
      const double sign = rng.Uniform() < 0.5 ? -1.0 : 1.0;
      const double central = 2 * eta_ * StaircaseHeight();
      if (rng.Uniform() < central) return sign * eta_ * rng.Uniform();
      // Band k >= 1 has probability proportional to e^{-k epsilon}.
      const double k = 1 + std::floor(std::log(rng.Uniform()) / -epsilon_);
      return sign * (eta_ + (k - 1 + rng.Uniform()) * sensitivity_);
    }
    case MechanismFamily::kRandomizedResponse:
      return rng.Uniform() * (1 + std::exp(-epsilon_)) < 1 ? 0.0 : 1.0;
  }
  return 0;
}

DominatingPair GetDominatingPair(const MechanismSpec& spec) {
  DominatingPair pair;
  if (spec.family() == MechanismFamily::kRandomizedResponse) {
    const double keep = 1.0 / (1.0 + std::exp(-spec.epsilon()));
    pair.discrete = true;
    pair.p = {keep, 1 - keep};
    pair.q = {1 - keep, keep};
    return pair;
  }
  const double s = spec.sensitivity();
  pair.p_density = [spec](double y) { return spec.NoiseDensity(y); };
  pair.q_density = [spec, s](double y) { return spec.NoiseDensity(y - s); };
  return pair;
}

LossMeasure MechanismLossMeasure(const MechanismSpec& spec) {
  LossMeasure measure;
  const double s = spec.sensitivity();
  switch (spec.family()) {
    case MechanismFamily::kGaussian: {
      // L = s (s - 2Y) / (2 sigma^2) ~ Normal(mu, 2 mu), mu = s^2 / 2 sigma^2.
      const double mu = s * s / (2 * spec.sigma() * spec.sigma());
      const double norm = 1.0 / std::sqrt(4 * std::numbers::pi * mu);
      measure.density = [mu, norm](double loss) {
        const double d = loss - mu;
        return norm * std::exp(-d * d / (4 * mu));
      };
      break;
    }
    case MechanismFamily::kLaplace: {
      const double top = spec.lambda() * s;
      measure.atoms = {{top, 0.5}, {-top, 0.5 * std::exp(-top)}};
      measure.density = [top](double loss) {
        return 0.25 * std::exp(-0.5 * (top - loss));
      };
      measure.support_min = -top;
      measure.support_max = top;
      break;
    }
    case MechanismFamily::kStaircase:
      measure = StaircaseLossMeasure(spec);
      break;
    case MechanismFamily::kRandomizedResponse: {
      const double keep = 1.0 / (1.0 + std::exp(-spec.epsilon()));
      measure.atoms = {{spec.epsilon(), keep}, {-spec.epsilon(), 1 - keep}};
      break;
    }
  }
  return measure;
}

absl::StatusOr<PrivacyLossDistribution> MechanismPld(
    const MechanismSpec& spec, const DiscretizationPolicy& policy) {
  return DiscretizePld(MechanismLossMeasure(spec), policy);
}

double Sample(const MechanismSpec& spec, double true_query_value,
              uint64_t rng_seed) {
  Rng rng(rng_seed);
  const double draw = spec.DrawNoise(rng);
  if (spec.family() == MechanismFamily::kRandomizedResponse) {
    return true_query_value != 0 ? 1 - draw : draw;
  }
  return true_query_value + draw;
}

absl::StatusOr<double> ExpectedCost(const MechanismSpec& spec,
                                    const CostFunction& cost) {
  switch (spec.family()) {
    case MechanismFamily::kRandomizedResponse:
      return absl::InvalidArgumentError(
          "expected cost is defined for additive-noise mechanisms only.");
    case MechanismFamily::kStaircase:
      return StaircaseCost(spec, cost);
    default:
      return QuadratureCost(spec, cost);
  }
}

}  // namespace dpa
