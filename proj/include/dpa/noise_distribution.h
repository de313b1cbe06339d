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

#ifndef DPA_NOISE_DISTRIBUTION_H_
#define DPA_NOISE_DISTRIBUTION_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "dpa/cost.h"
#include "dpa/pld.h"

namespace dpa {

// Symmetric noise on the lattice grid_spacing * Z. The core holds the masses
// at -N..N (core_masses[N + j] is the mass at j * grid_spacing); beyond N the
// masses continue geometrically, mass(N + m) = mass(N) * tail_decay_rate^m.
class NoiseDistribution {
 public:
  static absl::StatusOr<NoiseDistribution> Create(double grid_spacing,
                                                  std::vector<double> core_masses,
                                                  double tail_decay_rate);

  double grid_spacing() const { return grid_spacing_; }
  const std::vector<double>& core_masses() const { return core_masses_; }
  double tail_decay_rate() const { return tail_decay_rate_; }
  int64_t half_width() const {
    return static_cast<int64_t>(core_masses_.size() / 2);
  }

  // Mass at lattice point j (any integer).
  double Mass(int64_t j) const;
  // Mass of each geometric tail (beyond +N, and symmetrically below -N).
  double TailMass() const;
  double TotalMass() const;
  // E[c(Z)], tails summed until negligible.
  double ExpectedCost(const CostFunction& cost) const;
  // KL(p || p shifted by `shift` lattice cells).
  double ShiftedKl(int64_t shift) const;

  // PLD of (p, p shifted by `shift` lattice cells).
  absl::StatusOr<PrivacyLossDistribution> Pld(
      int64_t shift, const DiscretizationPolicy& policy) const;

 private:
  NoiseDistribution(double grid_spacing, std::vector<double> core_masses,
                    double tail_decay_rate)
      : grid_spacing_(grid_spacing),
        core_masses_(std::move(core_masses)),
        tail_decay_rate_(tail_decay_rate) {}

  double grid_spacing_;
  std::vector<double> core_masses_;
  double tail_decay_rate_;
};

// Number of lattice cells spanned by `distance`; fails unless distance is a
// positive multiple of grid_spacing (to within 1e-9 relative).
absl::StatusOr<int64_t> LatticeCells(double distance, double grid_spacing);

}  // namespace dpa

#endif  // DPA_NOISE_DISTRIBUTION_H_
