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

#include "dpa/pld.h"

#include <cmath>
#include <numeric>

#include "absl/strings/str_format.h"
#include "dpa/status_macros.h"

namespace dpa {

absl::Status DiscretizationPolicy::Validate() const {
  if (!(grid_spacing > 0) || !std::isfinite(grid_spacing)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("InvalidPolicy: grid_spacing must be positive, got %g",
                        grid_spacing));
  }
  if (!(tail_mass_bound > 0 && tail_mass_bound < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "InvalidPolicy: tail_mass_bound must lie in (0, 1), got %g",
        tail_mass_bound));
  }
  return absl::OkStatus();
}

absl::StatusOr<PrivacyLossDistribution> PrivacyLossDistribution::Create(
    double grid_spacing, int64_t min_index, std::vector<double> masses,
    double infinity_mass, bool pessimistic) {
  if (!(grid_spacing > 0) || !std::isfinite(grid_spacing)) {
    return absl::InvalidArgumentError("grid_spacing must be positive.");
  }
  if (masses.empty()) {
    return absl::InvalidArgumentError("masses must not be empty.");
  }
  if (!(infinity_mass >= 0 && infinity_mass <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("infinity_mass must lie in [0, 1], got %g",
                        infinity_mass));
  }
  double total = infinity_mass;
  for (double m : masses) {
    if (!(m >= 0) || !std::isfinite(m)) {
      return absl::InvalidArgumentError(
          "masses must be finite and non-negative.");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "total mass must be 1 within %g, got 1 %+.3e", kMassTolerance,
        total - 1.0));
  }
  return PrivacyLossDistribution(grid_spacing, min_index, std::move(masses),
                                 infinity_mass, pessimistic);
}

PrivacyLossDistribution PrivacyLossDistribution::Identity(double grid_spacing,
                                                          bool pessimistic) {
  return PrivacyLossDistribution(grid_spacing, 0, {1.0}, 0.0, pessimistic);
}

double PrivacyLossDistribution::FiniteMass() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

absl::StatusOr<PldMoments> ComputeMoments(const PrivacyLossDistribution& pld) {
  if (pld.infinity_mass() > 0) {
    return InfiniteMassError(absl::StrFormat(
        "moments are undefined with infinity_mass = %g", pld.infinity_mass()));
  }
  const std::vector<double>& masses = pld.masses();
  double total = 0;
  double first = 0;
  for (size_t i = 0; i < masses.size(); ++i) {
    total += masses[i];
    first += masses[i] * pld.LossAt(i);
  }
  PldMoments moments;
  moments.mean = first / total;
  for (size_t i = 0; i < masses.size(); ++i) {
    const double centered = pld.LossAt(i) - moments.mean;
    moments.variance += masses[i] * centered * centered;
    moments.third_absolute_central_moment +=
        masses[i] * std::abs(centered * centered * centered);
  }
  moments.variance /= total;
  moments.third_absolute_central_moment /= total;
  return moments;
}

}  // namespace dpa
