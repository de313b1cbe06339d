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

#include "dpa/noise_distribution.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "absl/strings/str_format.h"

namespace dpa {

absl::StatusOr<int64_t> LatticeCells(double distance, double grid_spacing) {
  if (!(grid_spacing > 0) || !std::isfinite(grid_spacing)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid spacing must be positive, got %g", grid_spacing));
  }
  const double cells = distance / grid_spacing;
  const double rounded = std::round(cells);
  if (!(rounded >= 1) || std::abs(cells - rounded) > 1e-9 * rounded) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%g is not a positive multiple of the grid spacing %g", distance,
        grid_spacing));
  }
  return static_cast<int64_t>(rounded);
}

absl::StatusOr<NoiseDistribution> NoiseDistribution::Create(
    double grid_spacing, std::vector<double> core_masses,
    double tail_decay_rate) {
  if (!(grid_spacing > 0) || !std::isfinite(grid_spacing)) {
    return absl::InvalidArgumentError("grid_spacing must be positive.");
  }
  if (core_masses.size() % 2 != 1) {
    return absl::InvalidArgumentError(
        "core_masses must have odd length (symmetric around zero).");
  }
  if (!(tail_decay_rate > 0 && tail_decay_rate < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "tail_decay_rate must lie in (0, 1), got %g", tail_decay_rate));
  }
  const size_t n = core_masses.size();
  for (size_t i = 0; i < n; ++i) {
    const double m = core_masses[i];
    if (!(m >= 0) || !std::isfinite(m)) {
      return absl::InvalidArgumentError(
          "core masses must be finite and non-negative.");
    }
    const double mirror = core_masses[n - 1 - i];
    if (std::abs(m - mirror) > 1e-12 * std::max(m, mirror)) {
      return absl::InvalidArgumentError("core masses must be symmetric.");
    }
  }
  NoiseDistribution noise(grid_spacing, std::move(core_masses), tail_decay_rate);
  const double total = noise.TotalMass();
  if (std::abs(total - 1) > 1e-10) {
    return absl::InvalidArgumentError(
        absl::StrFormat("noise mass must be 1 within 1e-10, got %.15g", total));
  }
  return noise;
}

double NoiseDistribution::Mass(int64_t j) const {
  const int64_t n = half_width();
  const int64_t a = std::llabs(j);
  if (a <= n) return core_masses_[n + a];
  return core_masses_.back() *
         std::pow(tail_decay_rate_, static_cast<double>(a - n));
}

double NoiseDistribution::TailMass() const {
  return core_masses_.back() * tail_decay_rate_ / (1 - tail_decay_rate_);
}

double NoiseDistribution::TotalMass() const {
  double total = 0;
  for (double m : core_masses_) total += m;
  return total + 2 * TailMass();
}

double NoiseDistribution::ExpectedCost(const CostFunction& cost) const {
  const int64_t n = half_width();
  double total = 0;
  for (int64_t j = -n; j <= n; ++j) {
    const double m = core_masses_[n + j];
    if (m > 0) total += m * cost(static_cast<double>(j) * grid_spacing_);
  }
  const double edge = core_masses_.back();
  if (edge == 0) return total;
  double weight = edge;
  for (int64_t m = 1; m < (int64_t{1} << 26); ++m) {
    weight *= tail_decay_rate_;
    const double z = static_cast<double>(n + m) * grid_spacing_;
    const double term = weight * (cost(z) + cost(-z));
    total += term;
    if (term <= 1e-18 * total && weight <= 1e-18) break;
  }
  return total;
}

double NoiseDistribution::ShiftedKl(int64_t shift) const {
  // Beyond [-N - shift, N + shift] the log-ratio is +-shift * log(r) and the
  // two far tails cancel exactly.
  const int64_t n = half_width();
  double kl = 0;
  for (int64_t j = -n - shift; j <= n + shift; ++j) {
    const double p = Mass(j);
    if (p == 0) continue;
    const double q = Mass(j - shift);
    if (q == 0) return std::numeric_limits<double>::infinity();
    kl += p * std::log(p / q);
  }
  return kl;
}

absl::StatusOr<PrivacyLossDistribution> NoiseDistribution::Pld(
    int64_t shift, const DiscretizationPolicy& policy) const {
  if (shift < 1) {
    return absl::InvalidArgumentError("shift must be at least one cell.");
  }
  const int64_t n = half_width();
  const double log_r = std::log(tail_decay_rate_);
  const double shift_d = static_cast<double>(shift);
  LossMeasure measure;
  double infinity_mass = 0;
  for (int64_t j = -n; j <= n + shift; ++j) {
    const double p = Mass(j);
    if (p == 0) continue;
    const double q = Mass(j - shift);
    if (q == 0) {
      infinity_mass += p;
      continue;
    }
    measure.atoms.push_back({std::log(p / q), p});
  }
  const double edge = core_masses_.back();
  // j > N + shift: ratio r^shift.  j < -N: ratio r^-shift.
  measure.atoms.push_back(
      {shift_d * log_r,
       edge * std::pow(tail_decay_rate_, shift_d + 1) / (1 - tail_decay_rate_)});
  measure.atoms.push_back(
      {-shift_d * log_r, edge * tail_decay_rate_ / (1 - tail_decay_rate_)});
  // Normalize away the 1e-10 slack the type allows; the discretizer places
  // whatever the atoms leave out at +infinity.
  double total = infinity_mass;
  for (const LossAtom& atom : measure.atoms) total += atom.mass;
  for (LossAtom& atom : measure.atoms) atom.mass /= total;
  return DiscretizePld(measure, policy);
}

}  // namespace dpa
