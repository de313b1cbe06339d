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

#ifndef DPA_PLD_H_
#define DPA_PLD_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpa {

// Whether quantities derived from a discretized distribution are upper bounds
// (pessimistic) or lower bounds (optimistic) on the true ones.
enum class EstimateType { kPessimistic, kOptimistic };

// How the mass of a grid cell is placed on the grid.
//   kBoundary: the whole cell goes to the upper (pessimistic) or lower
//     (optimistic) boundary. Error in delta(epsilon) is O(grid_spacing).
//   kInterpolated: pessimistic splits each cell between both boundaries so
//     that its P-mass and Q-mass are preserved; optimistic lowers the
//     resulting hockey-stick curve by a per-cell chord bound and takes its
//     greatest convex minorant. Error is O(grid_spacing^2); both remain
//     valid bounds.
enum class CellPlacement { kBoundary, kInterpolated };

inline constexpr double kDefaultGridSpacing = 1e-4;
inline constexpr double kDefaultTailMassBound = 1e-10;

struct DiscretizationPolicy {
  double grid_spacing = kDefaultGridSpacing;
  // Mass allowed to be truncated into the end cells or the infinity atom.
  double tail_mass_bound = kDefaultTailMassBound;
  EstimateType rounding = EstimateType::kPessimistic;
  CellPlacement placement = CellPlacement::kBoundary;

  absl::Status Validate() const;
};

// Grid-discretized distribution of the privacy loss L = log dP/dQ(Y), Y ~ P.
// Cell i carries loss (min_index + i) * grid_spacing; the atom at +infinity
// holds the P-mass of outcomes impossible under Q.
class PrivacyLossDistribution {
 public:
  static absl::StatusOr<PrivacyLossDistribution> Create(
      double grid_spacing, int64_t min_index, std::vector<double> masses,
      double infinity_mass, bool pessimistic);

  // Point mass at zero loss: the mechanism that reveals nothing.
  static PrivacyLossDistribution Identity(double grid_spacing = kDefaultGridSpacing,
                                          bool pessimistic = true);

  double grid_spacing() const { return grid_spacing_; }
  int64_t min_index() const { return min_index_; }
  int64_t max_index() const {
    return min_index_ + static_cast<int64_t>(masses_.size()) - 1;
  }
  const std::vector<double>& masses() const { return masses_; }
  double infinity_mass() const { return infinity_mass_; }
  bool pessimistic() const { return pessimistic_; }
  size_t size() const { return masses_.size(); }

  double LossAt(size_t i) const {
    return static_cast<double>(min_index_ + static_cast<int64_t>(i)) *
           grid_spacing_;
  }
  double MaxLoss() const { return LossAt(masses_.size() - 1); }
  double MinLoss() const { return LossAt(0); }

  // Sum of the finite masses (excludes the infinity atom).
  double FiniteMass() const;

 private:
  PrivacyLossDistribution(double grid_spacing, int64_t min_index,
                          std::vector<double> masses, double infinity_mass,
                          bool pessimistic)
      : grid_spacing_(grid_spacing),
        min_index_(min_index),
        masses_(std::move(masses)),
        infinity_mass_(infinity_mass),
        pessimistic_(pessimistic) {}

  double grid_spacing_;
  int64_t min_index_;
  std::vector<double> masses_;
  double infinity_mass_;
  bool pessimistic_;
};

inline constexpr double kMassTolerance = 1e-12;

// A point mass of the privacy loss under the numerator distribution P.
struct LossAtom {
  double loss;
  double mass;
};

// Distribution of the privacy loss under P, given as a density on
// [support_min, support_max] plus finitely many atoms. Whatever mass is
// missing from density + atoms is the +infinity atom.
struct LossMeasure {
  std::function<double(double)> density;
  double support_min = -std::numeric_limits<double>::infinity();
  double support_max = std::numeric_limits<double>::infinity();
  std::vector<LossAtom> atoms;
};

absl::StatusOr<PrivacyLossDistribution> DiscretizePld(
    const LossMeasure& measure, const DiscretizationPolicy& policy);

// PLD of the pair (p, q) over a common finite alphabet. Outcomes with q = 0 <
// p go to the infinity atom; outcomes with p = 0 carry no P-mass.
absl::StatusOr<PrivacyLossDistribution> PldFromDiscretePair(
    std::span<const double> p, std::span<const double> q,
    const DiscretizationPolicy& policy);

struct PldMoments {
  double mean = 0;
  double variance = 0;
  double third_absolute_central_moment = 0;
};

// Fails with InfiniteMass when the distribution has an atom at +infinity.
absl::StatusOr<PldMoments> ComputeMoments(const PrivacyLossDistribution& pld);

}  // namespace dpa

#endif  // DPA_PLD_H_
