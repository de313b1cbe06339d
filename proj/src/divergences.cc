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

#include "dpa/divergences.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace dpa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEpsilonTolerance = 1e-9;

}  // namespace

double HockeyStick(const PrivacyLossDistribution& pld, double epsilon) {
  const std::vector<double>& masses = pld.masses();
  // Only cells with loss > epsilon contribute; walk down from the top.
  double delta = 0;
  for (size_t i = masses.size(); i-- > 0;) {
    const double loss = pld.LossAt(i);
    if (loss <= epsilon) break;
    if (masses[i] == 0) continue;
    delta += masses[i] * -std::expm1(epsilon - loss);
  }
  return std::clamp(delta + pld.infinity_mass(), 0.0, 1.0);
}

std::vector<double> HockeyStickCurve(const PrivacyLossDistribution& pld,
                                     std::span<const double> epsilons) {
  std::vector<double> out;
  out.reserve(epsilons.size());
  for (double epsilon : epsilons) out.push_back(HockeyStick(pld, epsilon));
  return out;
}

absl::StatusOr<double> EpsilonAtDelta(const PrivacyLossDistribution& pld,
                                      double delta) {
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  if (delta <= pld.infinity_mass()) {
    return absl::OutOfRangeError(absl::StrFormat(
        "Unachievable: delta %g does not exceed infinity_mass %g", delta,
        pld.infinity_mass()));
  }
  if (HockeyStick(pld, 0.0) <= delta) return 0.0;
  double lo = 0;
  double hi = std::max(pld.MaxLoss(), 0.0);
  // At the largest finite loss only the infinity atom remains.
  while (hi - lo > kEpsilonTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (HockeyStick(pld, mid) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double KlDivergence(const PrivacyLossDistribution& pld) {
  if (pld.infinity_mass() > 0) return kInf;
  const std::vector<double>& masses = pld.masses();
  double total = 0;
  double sum = 0;
  for (size_t i = 0; i < masses.size(); ++i) {
    total += masses[i];
    sum += masses[i] * pld.LossAt(i);
  }
  return sum / total;
}

double RenyiDivergence(const PrivacyLossDistribution& pld, double alpha) {
  if (pld.infinity_mass() > 0) return kInf;
  return FinitePartRenyi(pld, alpha);
}

double FinitePartRenyi(const PrivacyLossDistribution& pld, double alpha) {
  const std::vector<double>& masses = pld.masses();
  const double order = alpha - 1;
  double peak = -kInf;
  for (size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] > 0) peak = std::max(peak, order * pld.LossAt(i));
  }
  double sum = 0;
  for (size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] > 0) sum += masses[i] * std::exp(order * pld.LossAt(i) - peak);
  }
  return (peak + std::log(sum)) / order;
}

double FDivergence(const PrivacyLossDistribution& pld,
                   const std::function<double(double)>& f,
                   double f_limit_slope) {
  const std::vector<double>& masses = pld.masses();
  double sum = 0;
  for (size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] == 0) continue;
    const double loss = pld.LossAt(i);
    sum += masses[i] * std::exp(-loss) * f(std::exp(loss));
  }
  if (pld.infinity_mass() > 0) sum += pld.infinity_mass() * f_limit_slope;
  return sum;
}

double RdpToDp(double renyi_value, double alpha, double epsilon) {
  return std::min(1.0, std::exp((alpha - 1) * (renyi_value - epsilon)));
}

double RdpEpsilonAtDelta(std::span<const double> alphas,
                         std::span<const double> renyi_values, double delta) {
  double best = kInf;
  const double log_inv_delta = -std::log(delta);
  for (size_t j = 0; j < alphas.size() && j < renyi_values.size(); ++j) {
    best = std::min(best, renyi_values[j] + log_inv_delta / (alphas[j] - 1));
  }
  return std::max(best, 0.0);
}

}  // namespace dpa
