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

#ifndef DPA_COMPOSITION_H_
#define DPA_COMPOSITION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpa/divergences.h"
#include "dpa/pld.h"

namespace dpa {

struct CompositionOptions {
  // Largest number of grid cells any intermediate PLD may occupy.
  int64_t max_cells = int64_t{1} << 26;
  // Mass truncated from the tails after each convolution (split evenly
  // between both sides).
  double tail_mass_bound = kDefaultTailMassBound;
};

// (sum of epsilons, min(1, sum of deltas)).
PrivacyGuarantee BasicCompose(std::span<const PrivacyGuarantee> guarantees);

// delta at total epsilon implied by splitting epsilon evenly over k copies
// and adding the per-copy deltas: min(1, k * delta(epsilon / k)).
double BasicComposeDelta(const PrivacyLossDistribution& pld, int64_t k,
                         double epsilon);

// Total epsilon when each copy gets delta / k.
absl::StatusOr<double> BasicComposeEpsilon(const PrivacyLossDistribution& pld,
                                           int64_t k, double delta);

// PLD of the sum of independent privacy losses. All inputs must share the
// grid spacing ("GridMismatch" otherwise). The result is pessimistic only if
// every input is.
absl::StatusOr<PrivacyLossDistribution> FftCompose(
    std::span<const PrivacyLossDistribution> plds,
    const CompositionOptions& options = {});

// k-fold self-composition by repeated squaring.
absl::StatusOr<PrivacyLossDistribution> FftSelfCompose(
    const PrivacyLossDistribution& pld, int64_t k,
    const CompositionOptions& options = {});

// {1.1, ..., 1.9} and {2, 4, ..., 64}.
std::vector<double> DefaultRdpOrders();

// delta at epsilon from Renyi accounting of k copies, minimized over alphas.
// An infinity atom contributes 1 - (1 - infinity_mass)^k on top of the
// Chernoff bound for the finite parts.
PrivacyGuarantee RdpCompose(const PrivacyLossDistribution& pld, int64_t k,
                            std::span<const double> alphas, double epsilon);

// epsilon at delta from Renyi accounting of k copies; +infinity when the
// infinity atoms alone use up delta.
PrivacyGuarantee RdpComposeEpsilon(const PrivacyLossDistribution& pld,
                                   int64_t k, std::span<const double> alphas,
                                   double delta);

// Normal approximation of the k-fold privacy loss with the PLD's mean and
// variance. The result is an estimate, not a bound. Fails with InfiniteMass
// when the PLD has an infinity atom.
absl::StatusOr<PrivacyGuarantee> CltCompose(const PrivacyLossDistribution& pld,
                                            int64_t k, double epsilon);

// Smallest epsilon whose CLT estimate of delta is at most `delta`.
absl::StatusOr<PrivacyGuarantee> CltComposeEpsilon(
    const PrivacyLossDistribution& pld, int64_t k, double delta);

// delta(epsilon) of a Normal(mean, variance) privacy loss.
double NormalLossDelta(double mean, double variance, double epsilon);

}  // namespace dpa

#endif  // DPA_COMPOSITION_H_
