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

#include "dpa/composition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "absl/strings/str_format.h"
#include "boost/math/special_functions/erf.hpp"
#include "dpa/status_macros.h"
#include "fft_convolution.h"

namespace dpa {
namespace {

double LogNormalCdf(double x) {
  const double tail = 0.5 * boost::math::erfc(-x / std::sqrt(2.0));
  if (tail > 0) return std::log(tail);
  // Mills-ratio asymptotics for the far left tail.
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2 * std::numbers::pi);
}

absl::StatusOr<PrivacyLossDistribution> ConvolvePair(
    const PrivacyLossDistribution& a, const PrivacyLossDistribution& b,
    const CompositionOptions& options) {
  const double h = a.grid_spacing();
  if (std::abs(b.grid_spacing() - h) > 1e-12 * h) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "GridMismatch: grid spacings %.17g and %.17g differ", h,
        b.grid_spacing()));
  }
  const int64_t out_size =
      static_cast<int64_t>(a.size()) + static_cast<int64_t>(b.size()) - 1;
  if (out_size > options.max_cells) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "MemoryBudgetExceeded: composition needs %d cells, budget is %d",
        out_size, options.max_cells));
  }
  const bool pessimistic = a.pessimistic() && b.pessimistic();
  std::vector<double> masses = internal::Convolve(a.masses(), b.masses());
  int64_t min_index = a.min_index() + b.min_index();
  double infinity_mass =
      1.0 - (1.0 - a.infinity_mass()) * (1.0 - b.infinity_mass());
  const double target = 1.0 - infinity_mass;

  double total = 0;
  for (double& m : masses) {
    m = std::max(m, 0.0);
    total += m;
  }
  if (total > target) {
    const double scale = target / total;
    for (double& m : masses) m *= scale;
  } else if (pessimistic) {
    masses.back() += target - total;
  } else {
    masses.front() += target - total;
  }

  // Trim the tails: the right one to infinity (pessimistic) or onto the top
  // retained cell (optimistic); the left one onto the lowest retained cell.
  const double budget = 0.5 * options.tail_mass_bound;
  size_t first = 0;
  double left = 0;
  while (first + 1 < masses.size() && left + masses[first] <= budget) {
    left += masses[first++];
  }
  size_t last = masses.size() - 1;
  double right = 0;
  while (last > first && right + masses[last] <= budget) {
    right += masses[last--];
  }
  std::vector<double> kept(masses.begin() + first, masses.begin() + last + 1);
  kept.front() += left;
  if (pessimistic) {
    infinity_mass += right;
  } else {
    kept.back() += right;
  }
  min_index += static_cast<int64_t>(first);

  // Re-establish the exact mass invariant after the arithmetic above.
  double kept_total = 0;
  for (double m : kept) kept_total += m;
  infinity_mass = std::clamp(infinity_mass, 0.0, 1.0);
  if (kept_total > 0) {
    const double scale = (1.0 - infinity_mass) / kept_total;
    for (double& m : kept) m *= scale;
  }
  return PrivacyLossDistribution::Create(h, min_index, std::move(kept),
                                         infinity_mass, pessimistic);
}

}  // namespace

PrivacyGuarantee BasicCompose(std::span<const PrivacyGuarantee> guarantees) {
  PrivacyGuarantee total;
  for (const PrivacyGuarantee& g : guarantees) {
    total.epsilon += g.epsilon;
    total.delta += g.delta;
  }
  total.delta = std::min(1.0, total.delta);
  total.bound_kind = BoundKind::kUpper;
  return total;
}

double BasicComposeDelta(const PrivacyLossDistribution& pld, int64_t k,
                         double epsilon) {
  const double kd = static_cast<double>(k);
  return std::min(1.0, kd * HockeyStick(pld, epsilon / kd));
}

absl::StatusOr<double> BasicComposeEpsilon(const PrivacyLossDistribution& pld,
                                           int64_t k, double delta) {
  const double kd = static_cast<double>(k);
  ASSIGN_OR_RETURN(double per_copy, EpsilonAtDelta(pld, delta / kd));
  return kd * per_copy;
}

absl::StatusOr<PrivacyLossDistribution> FftCompose(
    std::span<const PrivacyLossDistribution> plds,
    const CompositionOptions& options) {
  if (plds.empty()) {
    return absl::InvalidArgumentError("nothing to compose.");
  }
  PrivacyLossDistribution result = plds.front();
  for (size_t i = 1; i < plds.size(); ++i) {
    ASSIGN_OR_RETURN(result, ConvolvePair(result, plds[i], options));
  }
  return result;
}

absl::StatusOr<PrivacyLossDistribution> FftSelfCompose(
    const PrivacyLossDistribution& pld, int64_t k,
    const CompositionOptions& options) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be at least 1, got %d", k));
  }
  std::optional<PrivacyLossDistribution> result;
  PrivacyLossDistribution power = pld;
  while (true) {
    if (k & 1) {
      if (result.has_value()) {
        ASSIGN_OR_RETURN(result, ConvolvePair(*result, power, options));
      } else {
        result = power;
      }
    }
    k >>= 1;
    if (k == 0) break;
    ASSIGN_OR_RETURN(power, ConvolvePair(power, power, options));
  }
  return *std::move(result);
}

std::vector<double> DefaultRdpOrders() {
  std::vector<double> alphas;
  for (int x = 1; x <= 9; ++x) alphas.push_back(1.0 + x / 10.0);
  for (double a = 2; a <= 64; a *= 2) alphas.push_back(a);
  return alphas;
}

namespace {

// Probability that at least one of k copies lands on the infinity atom. The
// Chernoff bound then only has to cover the finite parts, whose moment
// generating functions multiply under composition.
double InfinityDelta(const PrivacyLossDistribution& pld, int64_t k) {
  return -std::expm1(static_cast<double>(k) * std::log1p(-pld.infinity_mass()));
}

}  // namespace

PrivacyGuarantee RdpCompose(const PrivacyLossDistribution& pld, int64_t k,
                            std::span<const double> alphas, double epsilon) {
  double chernoff = 1.0;
  for (double alpha : alphas) {
    const double renyi = static_cast<double>(k) * FinitePartRenyi(pld, alpha);
    if (!std::isfinite(renyi)) continue;
    chernoff = std::min(chernoff, RdpToDp(renyi, alpha, epsilon));
  }
  return {epsilon, std::min(1.0, InfinityDelta(pld, k) + chernoff),
          BoundKind::kUpper};
}

PrivacyGuarantee RdpComposeEpsilon(const PrivacyLossDistribution& pld,
                                   int64_t k, std::span<const double> alphas,
                                   double delta) {
  const double remaining = delta - InfinityDelta(pld, k);
  if (!(remaining > 0)) {
    return {std::numeric_limits<double>::infinity(), delta, BoundKind::kUpper};
  }
  std::vector<double> renyi;
  renyi.reserve(alphas.size());
  for (double alpha : alphas) {
    renyi.push_back(static_cast<double>(k) * FinitePartRenyi(pld, alpha));
  }
  return {RdpEpsilonAtDelta(alphas, renyi, remaining), delta, BoundKind::kUpper};
}

double NormalLossDelta(double mean, double variance, double epsilon) {
  if (variance <= 0) return std::max(0.0, -std::expm1(epsilon - mean));
  const double sd = std::sqrt(variance);
  const double upper = 0.5 * boost::math::erfc(-(mean - epsilon) / sd / std::sqrt(2.0));
  const double log_second =
      epsilon - mean + 0.5 * variance + LogNormalCdf((mean - epsilon - variance) / sd);
  return std::clamp(upper - std::exp(log_second), 0.0, 1.0);
}

absl::StatusOr<PrivacyGuarantee> CltCompose(const PrivacyLossDistribution& pld,
                                            int64_t k, double epsilon) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be at least 1, got %d", k));
  }
  ASSIGN_OR_RETURN(PldMoments moments, ComputeMoments(pld));
  const double kd = static_cast<double>(k);
  return PrivacyGuarantee{
      epsilon, NormalLossDelta(kd * moments.mean, kd * moments.variance, epsilon),
      BoundKind::kEstimate};
}

absl::StatusOr<PrivacyGuarantee> CltComposeEpsilon(
    const PrivacyLossDistribution& pld, int64_t k, double delta) {
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  ASSIGN_OR_RETURN(PrivacyGuarantee at_zero, CltCompose(pld, k, 0.0));
  ASSIGN_OR_RETURN(PldMoments moments, ComputeMoments(pld));
  const double kd = static_cast<double>(k);
  const double mean = kd * moments.mean;
  const double variance = kd * moments.variance;
  if (at_zero.delta <= delta) return PrivacyGuarantee{0.0, delta, BoundKind::kEstimate};
  // NormalLossDelta decreases in epsilon; grow the bracket, then bisect.
  double lo = 0;
  double hi = std::max(1.0, mean + 10 * std::sqrt(variance));
  while (NormalLossDelta(mean, variance, hi) > delta) {
    lo = hi;
    hi *= 2;
    if (!std::isfinite(hi)) return NotConvergedError("CLT epsilon bracket");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (NormalLossDelta(mean, variance, mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return PrivacyGuarantee{hi, delta, BoundKind::kEstimate};
}

}  // namespace dpa
