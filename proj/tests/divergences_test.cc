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

#include <cmath>
#include <vector>

#include "dpa/mechanisms.h"
#include "dpa/pld.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpa {
namespace {

PrivacyLossDistribution RandomizedResponsePld(double epsilon) {
  return *MechanismPld(*MechanismSpec::RandomizedResponse(epsilon),
                       DiscretizationPolicy{});
}

TEST(HockeyStickTest, GaussianMatchesClosedForm) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{});
  for (double eps : {0.0, 0.5, 1.0, 2.0}) {
    const double exact = testing::GaussianDelta(1.0, 1.0, eps);
    EXPECT_GE(HockeyStick(pld, eps), exact - 1e-13);
    EXPECT_NEAR(HockeyStick(pld, eps), exact, 1e-4) << eps;
  }
}

TEST(HockeyStickTest, KnownGaussianValues) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{});
  EXPECT_NEAR(HockeyStick(pld, 0.0), 0.38292492254802624, 1e-4);
  EXPECT_NEAR(HockeyStick(pld, 1.0), 0.12693673750664392, 1e-4);
}

TEST(HockeyStickTest, CurveIsNonIncreasingAndMatchesPointwise) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Laplace(1.0, 1.0), DiscretizationPolicy{});
  std::vector<double> epsilons;
  for (int i = 0; i <= 40; ++i) epsilons.push_back(-1 + 0.05 * i);
  const std::vector<double> deltas = HockeyStickCurve(pld, epsilons);
  ASSERT_EQ(deltas.size(), epsilons.size());
  for (size_t i = 0; i < deltas.size(); ++i) {
    EXPECT_DOUBLE_EQ(deltas[i], HockeyStick(pld, epsilons[i]));
    if (i > 0) {
      EXPECT_LE(deltas[i], deltas[i - 1] + 1e-15);
    }
  }
}

TEST(EpsilonAtDeltaTest, InvertsHockeyStick) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{});
  for (double delta : {1e-1, 1e-3, 1e-6}) {
    absl::StatusOr<double> eps = EpsilonAtDelta(pld, delta);
    ASSERT_TRUE(eps.ok());
    EXPECT_LE(HockeyStick(pld, *eps), delta * (1 + 1e-6));
    EXPECT_GT(HockeyStick(pld, *eps - 1e-6), delta);
  }
}

TEST(EpsilonAtDeltaTest, UnachievableBelowInfinityMass) {
  const std::vector<double> p = {0.9, 0.1};
  const std::vector<double> q = {1.0, 0.0};
  const PrivacyLossDistribution pld = *PldFromDiscretePair(p, q, {});
  absl::StatusOr<double> eps = EpsilonAtDelta(pld, 0.05);
  EXPECT_EQ(eps.status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_TRUE(EpsilonAtDelta(pld, 0.2).ok());
}

TEST(DivergenceTest, RandomizedResponseClosedForms) {
  const double eps = 1.0;
  const PrivacyLossDistribution pld = RandomizedResponsePld(eps);
  // KL = eps tanh(eps / 2); total variation = delta(0) = tanh(eps / 2).
  EXPECT_NEAR(KlDivergence(pld), eps * std::tanh(eps / 2), 1e-12);
  EXPECT_NEAR(FDivergence(pld, [](double t) { return 0.5 * std::abs(t - 1); },
                          0.5),
              std::tanh(eps / 2), 1e-12);
  // Renyi of order 2: log(p^2 / q + (1 - p)^2 / (1 - q)).
  const double p = std::exp(eps) / (1 + std::exp(eps));
  const double r2 = std::log(p * p / (1 - p) + (1 - p) * (1 - p) / p);
  EXPECT_NEAR(RenyiDivergence(pld, 2.0), r2, 1e-12);
  EXPECT_NEAR(r2, 0.7353256640555191, 1e-12);
}

TEST(DivergenceTest, GaussianRenyi) {
  // The optimistic PLD keeps its truncated tail finite; the pessimistic one
  // moves it to the infinity atom, which makes every divergence infinite.
  DiscretizationPolicy policy;
  policy.rounding = EstimateType::kOptimistic;
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), policy);
  // Large orders weight the far tail that discretization truncates, so the
  // check stays at moderate alpha.
  for (double alpha : {1.5, 2.0, 4.0}) {
    EXPECT_NEAR(RenyiDivergence(pld, alpha), alpha / 2, 2e-3 * alpha);
  }
  EXPECT_NEAR(KlDivergence(pld), 0.5, 1e-3);
  EXPECT_TRUE(std::isinf(KlDivergence(*MechanismPld(
      *MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{}))));
}

TEST(DivergenceTest, InfinityMassMakesDivergencesInfinite) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {1.0, 0.0};
  const PrivacyLossDistribution pld = *PldFromDiscretePair(p, q, {});
  EXPECT_TRUE(std::isinf(KlDivergence(pld)));
  EXPECT_TRUE(std::isinf(RenyiDivergence(pld, 2.0)));
}

TEST(RdpConversionTest, ChernoffBound) {
  EXPECT_NEAR(RdpToDp(1.0, 2.0, 10.0), std::exp(-9.0), 1e-15);
  EXPECT_DOUBLE_EQ(RdpToDp(5.0, 2.0, 1.0), 1.0);
  const std::vector<double> alphas = {2.0, 4.0};
  const std::vector<double> values = {1.0, 2.0};
  const double eps = RdpEpsilonAtDelta(alphas, values, 1e-5);
  EXPECT_NEAR(eps, std::min(1.0 + std::log(1e5), 2.0 + std::log(1e5) / 3),
              1e-12);
}

}  // namespace
}  // namespace dpa
