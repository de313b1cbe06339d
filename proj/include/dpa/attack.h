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

#ifndef DPA_ATTACK_H_
#define DPA_ATTACK_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "dpa/mechanisms.h"
#include "dpa/tradeoff.h"

namespace dpa {

inline constexpr int kAttackQuantileLevels = 512;
inline constexpr double kAttackConfidence = 0.99;
inline constexpr int64_t kMinAttackSamples = 1000;

// One likelihood-ratio test: decide "query = s" when LLR < threshold
// (strict) or LLR <= threshold (non-strict).
struct SweepPoint {
  double threshold = 0;
  bool strict = true;
  double p_fa = 0;
  double p_md = 0;
  double radius = 0;
};

struct Violation {
  double p_fa = 0;
  double p_md = 0;
  double bound_value = 0;
};

struct AttackReport {
  int64_t num_samples = 0;
  uint64_t seed = 0;
  double confidence = kAttackConfidence;
  std::vector<SweepPoint> sweep;
  std::vector<Violation> violations;
};

// Runs the optimal (white-box) likelihood-ratio adversary with num_samples
// draws under each hypothesis and flags every sweep point that lies below
// the claimed curve by more than its confidence radius. Radii are Hoeffding
// bounds, Bonferroni-corrected over every estimate in the sweep, so a true
// claim reports no violation with probability at least 99%. Thresholds come
// from an independent pilot sample so that they do not depend on the
// counted draws.
absl::StatusOr<AttackReport> RunAttack(const MechanismSpec& spec,
                                       const TradeoffCurve& claimed,
                                       int64_t num_samples, uint64_t rng_seed);

// Lower convex hull of the sweep points of the same adversary.
absl::StatusOr<TradeoffCurve> EmpiricalTradeoff(const MechanismSpec& spec,
                                                int64_t num_samples,
                                                uint64_t rng_seed);

// Worker-thread cap: DPA_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int MaxThreads();

}  // namespace dpa

#endif  // DPA_ATTACK_H_
