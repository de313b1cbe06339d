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

#ifndef DPA_DIVERGENCES_H_
#define DPA_DIVERGENCES_H_

#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpa/pld.h"

namespace dpa {

enum class BoundKind { kUpper, kLower, kEstimate };

struct PrivacyGuarantee {
  double epsilon = 0;
  double delta = 0;
  BoundKind bound_kind = BoundKind::kUpper;
};

// delta(epsilon) = E_P[(1 - e^{epsilon - L})^+] + infinity_mass. Defined for
// every finite epsilon, including negative values.
double HockeyStick(const PrivacyLossDistribution& pld, double epsilon);

// HockeyStick at every epsilon in `epsilons`.
std::vector<double> HockeyStickCurve(const PrivacyLossDistribution& pld,
                                     std::span<const double> epsilons);

// Smallest epsilon >= 0 (to within 1e-9) with HockeyStick(pld, epsilon) <=
// delta. Fails with "Unachievable" when delta <= infinity_mass.
absl::StatusOr<double> EpsilonAtDelta(const PrivacyLossDistribution& pld,
                                      double delta);

// KL(P || Q); +infinity when the PLD has an infinity atom.
double KlDivergence(const PrivacyLossDistribution& pld);

// Renyi divergence of order alpha > 1; +infinity with an infinity atom.
double RenyiDivergence(const PrivacyLossDistribution& pld, double alpha);

// (1 / (alpha - 1)) log E_P[e^{(alpha - 1) L}; L finite]. Equals the Renyi
// divergence when there is no infinity atom and stays finite otherwise.
double FinitePartRenyi(const PrivacyLossDistribution& pld, double alpha);

// E_P[e^{-L} f(e^L)] + infinity_mass * f_limit_slope, where f_limit_slope is
// lim_{t -> inf} f(t) / t. Zero infinity mass never touches the slope.
double FDivergence(const PrivacyLossDistribution& pld,
                   const std::function<double(double)>& f,
                   double f_limit_slope);

// min(1, exp((alpha - 1) (renyi_value - epsilon))).
double RdpToDp(double renyi_value, double alpha, double epsilon);

// Smallest epsilon such that some alpha in the grid certifies delta, i.e.
// min over alpha of renyi(alpha) + log(1 / delta) / (alpha - 1).
double RdpEpsilonAtDelta(std::span<const double> alphas,
                         std::span<const double> renyi_values, double delta);

}  // namespace dpa

#endif  // DPA_DIVERGENCES_H_
