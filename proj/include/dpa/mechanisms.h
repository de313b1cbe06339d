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

#ifndef DPA_MECHANISMS_H_
#define DPA_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpa/cost.h"
#include "dpa/pld.h"
#include "dpa/rng.h"

namespace dpa {

enum class MechanismFamily { kGaussian, kLaplace, kStaircase, kRandomizedResponse };

absl::string_view FamilyName(MechanismFamily family);
absl::StatusOr<MechanismFamily> ParseFamily(absl::string_view name);

// Scalar-query mechanism. Additive families release q(D) + Z; randomized
// response releases a bit (query values are read as 0 versus non-zero).
class MechanismSpec {
 public:
  static absl::StatusOr<MechanismSpec> Gaussian(double sigma, double sensitivity);
  // Noise density (lambda / 2) exp(-lambda |z|).
  static absl::StatusOr<MechanismSpec> Laplace(double lambda, double sensitivity);
  // Density c e^{-k epsilon} on band k: |z| <= eta for k = 0 and
  // |z| in ((k - 1) s + eta, k s + eta] for k >= 1.
  static absl::StatusOr<MechanismSpec> Staircase(double epsilon, double eta,
                                                 double sensitivity);
  static absl::StatusOr<MechanismSpec> RandomizedResponse(double epsilon);

  MechanismFamily family() const { return family_; }
  double sigma() const { return sigma_; }
  double lambda() const { return lambda_; }
  double epsilon() const { return epsilon_; }
  double eta() const { return eta_; }
  double sensitivity() const { return sensitivity_; }

  // Staircase normalizing constant c.
  double StaircaseHeight() const;

  // Noise density (additive families) or P(output = y | bit 0) for
  // randomized response with y in {0, 1}.
  double NoiseDensity(double z) const;

  // log p(y) / q(y) where p is the output law at query 0 and q at query s
  // (bit 1 for randomized response). May be +-infinity.
  double LogLikelihoodRatio(double y) const;

  // One draw of the additive noise (or of the randomized-response output for
  // bit 0) from the given generator.
  double DrawNoise(Rng& rng) const;

 private:
  MechanismSpec(MechanismFamily family, double sensitivity)
      : family_(family), sensitivity_(sensitivity) {}

  MechanismFamily family_;
  double sigma_ = 0;
  double lambda_ = 0;
  double epsilon_ = 0;
  double eta_ = 0;
  double sensitivity_ = 1;
};

// The pair (P, Q) whose tradeoff bounds every neighboring pair. Continuous
// families fill the densities; randomized response fills the probability
// vectors over outcomes {0, 1}.
struct DominatingPair {
  bool discrete = false;
  std::function<double(double)> p_density;
  std::function<double(double)> q_density;
  std::vector<double> p;
  std::vector<double> q;
};

// For the symmetric unimodal additive noises here the pair (noise, noise
// shifted by s) is taken as dominating; the reverse pair has the same PLD.
DominatingPair GetDominatingPair(const MechanismSpec& spec);

// PLD of the dominating pair. By symmetry this is also the PLD of the
// reverse ordering.
absl::StatusOr<PrivacyLossDistribution> MechanismPld(
    const MechanismSpec& spec, const DiscretizationPolicy& policy);

// Distribution of the privacy loss of the dominating pair before
// discretization.
LossMeasure MechanismLossMeasure(const MechanismSpec& spec);

// Deterministic given the seed: q + noise, or the randomized-response
// output for the bit (true_query_value != 0).
double Sample(const MechanismSpec& spec, double true_query_value,
              uint64_t rng_seed);

// E[c(Z)] for the noise. Staircase with a polynomial cost is integrated band
// by band in closed form; otherwise adaptive quadrature with absolute
// tolerance 1e-8.
absl::StatusOr<double> ExpectedCost(const MechanismSpec& spec,
                                    const CostFunction& cost);

}  // namespace dpa

#endif  // DPA_MECHANISMS_H_
