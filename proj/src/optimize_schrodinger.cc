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

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_format.h"
#include "dpa/optimize.h"
#include "dpa/status_macros.h"

namespace dpa {
namespace {

constexpr double kEnergyTolerance = 1e-10;
constexpr double kCostTolerance = 1e-6;
constexpr double kDecayRatio = 1e-8;

struct Shot {
  std::vector<double> y;
  bool crossed = false;  // y changed sign before the boundary
};

// Integrates y'' = (theta c(z) - E) y from y(0) = 1, y'(0) = 0 with RK4.
Shot Shoot(const CostFunction& cost, double theta, double energy, double step,
           int points) {
  Shot shot;
  shot.y.resize(points);
  double y = 1.0;
  double dy = 0.0;
  shot.y[0] = y;
  auto accel = [&](double z, double value) {
    return (theta * cost(z) - energy) * value;
  };
  for (int i = 1; i < points; ++i) {
    const double z = (i - 1) * step;
    const double k1y = dy;
    const double k1v = accel(z, y);
    const double k2y = dy + 0.5 * step * k1v;
    const double k2v = accel(z + 0.5 * step, y + 0.5 * step * k1y);
    const double k3y = dy + 0.5 * step * k2v;
    const double k3v = accel(z + 0.5 * step, y + 0.5 * step * k2y);
    const double k4y = dy + step * k3v;
    const double k4v = accel(z + step, y + step * k3y);
    y += step / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    shot.y[i] = y;
    if (y < 0) shot.crossed = true;
  }
  return shot;
}

struct GroundState {
  double energy;
  std::vector<double> density;  // on 0, step, ..., z_max (unnormalized)
};

absl::StatusOr<GroundState> SolveGroundState(const CostFunction& cost,
                                             double theta, double step,
                                             int points) {
  const double z_max = (points - 1) * step;
  double lo = 0;
  double hi = theta * cost(z_max);
  if (Shoot(cost, theta, lo, step, points).crossed ||
      !Shoot(cost, theta, hi, step, points).crossed) {
    return absl::InternalError(absl::StrFormat(
        "NoGroundState: no energy bracket for theta = %g on [0, %g]", theta,
        z_max));
  }
  while (hi - lo > kEnergyTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (Shoot(cost, theta, mid, step, points).crossed) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double energy = 0.5 * (lo + hi);
  std::vector<double> y = Shoot(cost, theta, energy, step, points).y;
  // Past the point where the unstable solution takes over (y turns upward or
  // changes sign), continue with the decaying WKB branch.
  for (int i = 1; i < points; ++i) {
    if (y[i] > 0 && y[i] <= y[i - 1]) continue;
    for (int j = i; j < points; ++j) {
      const double z = (j - 0.5) * step;
      const double rate = std::sqrt(std::max(theta * cost(z) - energy, 0.0));
      y[j] = y[j - 1] * std::exp(-rate * step);
    }
    break;
  }
  GroundState state{energy, std::vector<double>(points)};
  for (int i = 0; i < points; ++i) state.density[i] = y[i] * y[i];
  return state;
}

double LatticeCost(const CostFunction& cost, const std::vector<double>& density,
                   double step) {
  double mass = density[0];
  double weighted = 0;
  for (size_t i = 1; i < density.size(); ++i) {
    mass += 2 * density[i];
    const double z = static_cast<double>(i) * step;
    weighted += density[i] * (cost(z) + cost(-z));
  }
  return weighted / mass;
}

}  // namespace

absl::StatusOr<SchrodingerResult> SolveSchrodinger(
    const CostSpec& cost, const SchrodingerOptions& options) {
  if (!(cost.budget > 0) || !std::isfinite(cost.budget)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("cost budget must be positive, got %g", cost.budget));
  }
  if (!(options.ode_step > 0) || !(options.z_max > 10 * options.ode_step)) {
    return absl::InvalidArgumentError(
        "need ode_step > 0 and z_max of at least ten steps.");
  }
  if (options.z_max / options.ode_step > 1e7) {
    return absl::InvalidArgumentError("too many ODE steps requested.");
  }
  const int points =
      static_cast<int>(std::round(options.z_max / options.ode_step)) + 1;
  const double step = options.ode_step;

  auto cost_at = [&](double theta) -> absl::StatusOr<std::pair<GroundState, double>> {
    ASSIGN_OR_RETURN(GroundState state,
                     SolveGroundState(cost.cost, theta, step, points));
    const double value = LatticeCost(cost.cost, state.density, step);
    return std::make_pair(std::move(state), value);
  };

  // A larger theta penalizes cost more and concentrates the density.
  double lo = 1.0;
  double hi = 1.0;
  ASSIGN_OR_RETURN(auto probe, cost_at(1.0));
  if (probe.second > cost.budget) {
    for (int i = 0; i < 200 && probe.second > cost.budget; ++i) {
      lo = hi;
      hi *= 2;
      ASSIGN_OR_RETURN(probe, cost_at(hi));
    }
  } else {
    for (int i = 0; i < 200 && probe.second <= cost.budget; ++i) {
      hi = lo;
      lo /= 2;
      ASSIGN_OR_RETURN(probe, cost_at(lo));
    }
  }
  ASSIGN_OR_RETURN(auto best, cost_at(0.5 * (lo + hi)));
  double theta = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    theta = 0.5 * (lo + hi);
    ASSIGN_OR_RETURN(best, cost_at(theta));
    if (std::abs(best.second - cost.budget) <= kCostTolerance) break;
    if (best.second > cost.budget) {
      lo = theta;
    } else {
      hi = theta;
    }
  }
  if (std::abs(best.second - cost.budget) > kCostTolerance) {
    return NotConvergedError(absl::StrFormat(
        "cost %g could not be matched to budget %g", best.second, cost.budget));
  }

  const std::vector<double>& density = best.first.density;
  if (density.back() / density.front() >= kDecayRatio) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "BoundaryTooSmall: p(z_max) / p(0) = %g; increase z_max",
        density.back() / density.front()));
  }
  const double decay =
      std::clamp(density[points - 1] / density[points - 2], 1e-300, 1 - 1e-12);
  std::vector<double> core(2 * points - 1);
  for (int i = 0; i < points; ++i) {
    core[points - 1 + i] = density[i];
    core[points - 1 - i] = density[i];
  }
  double total = 0;
  for (double m : core) total += m;
  total += 2 * density.back() * decay / (1 - decay);
  for (double& m : core) m /= total;
  ASSIGN_OR_RETURN(NoiseDistribution noise,
                   NoiseDistribution::Create(step, std::move(core), decay));
  SchrodingerResult result{std::move(noise), theta, best.first.energy, 0.0};
  result.expected_cost = result.noise.ExpectedCost(cost.cost);
  return result;
}

}  // namespace dpa
