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

#include <cmath>
#include <vector>

#include "dpa/divergences.h"
#include "dpa/mechanisms.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpa {
namespace {

DiscretizationPolicy Policy(double h, EstimateType rounding) {
  DiscretizationPolicy policy;
  policy.grid_spacing = h;
  policy.rounding = rounding;
  return policy;
}

TEST(BasicComposeTest, SumsGuarantees) {
  const std::vector<PrivacyGuarantee> parts = {{0.5, 1e-6}, {1.0, 2e-6}};
  const PrivacyGuarantee total = BasicCompose(parts);
  EXPECT_DOUBLE_EQ(total.epsilon, 1.5);
  EXPECT_NEAR(total.delta, 3e-6, 1e-20);
}

TEST(FftComposeTest, GaussianSelfCompositionMatchesClosedForm) {
  // k Gaussian mechanisms with sigma = 1 compose to one with sigma = 1/sqrt(k).
  const int k = 16;
  const PrivacyLossDistribution pld = *MechanismPld(
      *MechanismSpec::Gaussian(1.0, 1.0), Policy(1e-3, EstimateType::kPessimistic));
  absl::StatusOr<PrivacyLossDistribution> composed = FftSelfCompose(pld, k);
  ASSERT_TRUE(composed.ok()) << composed.status();
  for (double eps : {1.0, 4.0, 8.0}) {
    const double exact = testing::GaussianDelta(1.0 / std::sqrt(k), 1.0, eps);
    EXPECT_GE(HockeyStick(*composed, eps), exact - 1e-12);
    EXPECT_NEAR(HockeyStick(*composed, eps), exact, 5e-3);
  }
}

TEST(FftComposeTest, PureDpClosure) {
  const int k = 7;
  const PrivacyLossDistribution pld = *MechanismPld(
      *MechanismSpec::Laplace(0.5, 1.0), Policy(1e-3, EstimateType::kPessimistic));
  const PrivacyLossDistribution composed = *FftSelfCompose(pld, k);
  EXPECT_NEAR(composed.MaxLoss(), 0.5 * k, 1e-9);
  EXPECT_NEAR(HockeyStick(composed, 0.5 * k), 0.0, 1e-10);
}

TEST(FftComposeTest, OrderDoesNotMatter) {
  const DiscretizationPolicy policy = Policy(1e-3, EstimateType::kPessimistic);
  const PrivacyLossDistribution a =
      *MechanismPld(*MechanismSpec::Gaussian(1.5, 1.0), policy);
  const PrivacyLossDistribution b =
      *MechanismPld(*MechanismSpec::Laplace(0.8, 1.0), policy);
  const PrivacyLossDistribution c =
      *MechanismPld(*MechanismSpec::RandomizedResponse(0.3), policy);
  const std::vector<PrivacyLossDistribution> abc = {a, b, c};
  const std::vector<PrivacyLossDistribution> cab = {c, a, b};
  const PrivacyLossDistribution x = *FftCompose(abc);
  const PrivacyLossDistribution y = *FftCompose(cab);
  // Tail truncation after each step depends on the order, so the supports
  // may differ by a few cells carrying less than the tail bound.
  for (double eps = 0; eps < 5; eps += 0.05) {
    EXPECT_NEAR(HockeyStick(x, eps), HockeyStick(y, eps), 1e-9);
  }
}

TEST(FftComposeTest, GridMismatchIsRejected) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(1.0, 1.0);
  const std::vector<PrivacyLossDistribution> plds = {
      *MechanismPld(spec, Policy(1e-3, EstimateType::kPessimistic)),
      *MechanismPld(spec, Policy(2e-3, EstimateType::kPessimistic))};
  absl::StatusOr<PrivacyLossDistribution> composed = FftCompose(plds);
  EXPECT_EQ(composed.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(FftComposeTest, MemoryBudget) {
  const PrivacyLossDistribution pld = *MechanismPld(
      *MechanismSpec::Gaussian(1.0, 1.0), Policy(1e-4, EstimateType::kPessimistic));
  CompositionOptions options;
  options.max_cells = 1000;
  EXPECT_EQ(FftSelfCompose(pld, 4, options).status().code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(FftComposeTest, BracketingUnderComposition) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(2.0, 1.0);
  const PrivacyLossDistribution hi = *FftSelfCompose(
      *MechanismPld(spec, Policy(1e-3, EstimateType::kPessimistic)), 10);
  const PrivacyLossDistribution lo = *FftSelfCompose(
      *MechanismPld(spec, Policy(1e-3, EstimateType::kOptimistic)), 10);
  for (double eps = 0; eps < 4; eps += 0.1) {
    EXPECT_GE(HockeyStick(hi, eps), HockeyStick(lo, eps) - 1e-12);
  }
}

TEST(AccountantOrderingTest, FftRdpBasic) {
  const std::vector<double> alphas = DefaultRdpOrders();
  ASSERT_EQ(alphas.size(), 15u);
  for (MechanismSpec spec :
       {*MechanismSpec::Gaussian(1.0, 1.0), *MechanismSpec::Laplace(1.0, 1.0)}) {
    const PrivacyLossDistribution pld =
        *MechanismPld(spec, Policy(1e-3, EstimateType::kPessimistic));
    for (int k : {1, 10, 100}) {
      const PrivacyLossDistribution composed = *FftSelfCompose(pld, k);
      const double eps = std::sqrt(static_cast<double>(k));
      const double fft = HockeyStick(composed, eps);
      const double rdp = RdpCompose(pld, k, alphas, eps).delta;
      const double basic = BasicComposeDelta(pld, k, eps);
      EXPECT_LE(fft, rdp + 1e-12) << FamilyName(spec.family()) << " k=" << k;
      // A single copy is accounted exactly by the basic bound.
      if (k > 1) {
        EXPECT_LE(rdp, basic + 1e-12) << FamilyName(spec.family()) << " k=" << k;
      }
    }
  }
}

TEST(RdpComposeTest, FiniteDespiteInfinityAtom) {
  // The pessimistic Gaussian PLD parks its truncated tail on the infinity
  // atom; the Renyi accountant still gives a finite answer close to FFT.
  const PrivacyLossDistribution pld = *MechanismPld(
      *MechanismSpec::Gaussian(1.0, 1.0), Policy(1e-3, EstimateType::kPessimistic));
  ASSERT_GT(pld.infinity_mass(), 0.0);
  const double fft = *EpsilonAtDelta(*FftSelfCompose(pld, 100), 1e-5);
  const double rdp =
      RdpComposeEpsilon(pld, 100, DefaultRdpOrders(), 1e-5).epsilon;
  EXPECT_GT(rdp, fft);
  EXPECT_LT(rdp, 1.25 * fft);
  // R_2 = 1 for this pair, so delta(10) = e^{-9} at order 2 alone.
  const std::vector<double> two = {2.0};
  EXPECT_NEAR(RdpCompose(pld, 1, two, 10.0).delta, std::exp(-9.0), 1e-6);
  EXPECT_TRUE(std::isinf(RdpComposeEpsilon(pld, 1, two, 1e-12).epsilon));
}

TEST(CltComposeTest, EstimateMatchesExactForGaussian) {
  // The Gaussian privacy loss is exactly normal, so the CLT is exact. The
  // optimistic PLD is used because the pessimistic one has an infinity atom.
  const PrivacyLossDistribution pld = *MechanismPld(
      *MechanismSpec::Gaussian(1.0, 1.0), Policy(1e-4, EstimateType::kOptimistic));
  absl::StatusOr<PrivacyGuarantee> clt = CltCompose(pld, 100, 60.0);
  ASSERT_TRUE(clt.ok());
  EXPECT_EQ(clt->bound_kind, BoundKind::kEstimate);
  EXPECT_NEAR(clt->delta, testing::GaussianDelta(0.1, 1.0, 60.0), 2e-3);
  absl::StatusOr<PrivacyGuarantee> eps = CltComposeEpsilon(pld, 100, clt->delta);
  ASSERT_TRUE(eps.ok());
  EXPECT_NEAR(eps->epsilon, 60.0, 1e-6);
}

TEST(CltComposeTest, InfiniteMassIsRejected) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {1.0, 0.0};
  const PrivacyLossDistribution pld = *PldFromDiscretePair(p, q, {});
  EXPECT_FALSE(CltCompose(pld, 3, 1.0).ok());
}

TEST(NormalLossDeltaTest, MatchesGaussianMechanism) {
  // mu = 2: loss ~ N(2, 4).
  EXPECT_NEAR(NormalLossDelta(2.0, 4.0, 1.5), testing::GaussianDelta(0.5, 1.0, 1.5),
              1e-12);
}

}  // namespace
}  // namespace dpa
