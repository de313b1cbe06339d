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

#include "dpa/attack.h"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "dpa/divergences.h"
#include "dpa/mechanisms.h"
#include "dpa/tradeoff.h"
#include "gtest/gtest.h"

namespace dpa {
namespace {

TEST(RunAttackTest, LaplaceMatchingClaimHasNoViolations) {
  const MechanismSpec spec = *MechanismSpec::Laplace(1.0, 1.0);
  absl::StatusOr<AttackReport> report =
      RunAttack(spec, DpTradeoff(1.0, 0.0), 100000, 1);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_TRUE(report->violations.empty());
  for (const SweepPoint& point : report->sweep) {
    EXPECT_GE(point.p_fa, 0.0);
    EXPECT_LE(point.p_fa, 1.0);
    EXPECT_GE(point.p_md, 0.0);
    EXPECT_LE(point.p_md, 1.0);
    EXPECT_GT(point.radius, 0.0);
  }
}

TEST(RunAttackTest, FalselyStrongLaplaceClaimIsCaught) {
  const MechanismSpec spec = *MechanismSpec::Laplace(1.0, 1.0);
  absl::StatusOr<AttackReport> report =
      RunAttack(spec, DpTradeoff(0.5, 0.0), 1000000, 2);
  ASSERT_TRUE(report.ok());
  EXPECT_FALSE(report->violations.empty());
}

TEST(RunAttackTest, GaussianIsNotPerfectlyPrivate) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(1.0, 1.0);
  absl::StatusOr<AttackReport> report =
      RunAttack(spec, DpTradeoff(0.0, 0.0), 100000, 3);
  ASSERT_TRUE(report.ok());
  EXPECT_FALSE(report->violations.empty());
}

TEST(RunAttackTest, RadiusIsBonferroniHoeffding) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(1.0, 1.0);
  absl::StatusOr<AttackReport> report =
      RunAttack(spec, DpTradeoff(1.0, 0.2), 10000, 4);
  ASSERT_TRUE(report.ok());
  const double estimates = 2.0 * report->sweep.size();
  const double expected =
      std::sqrt(std::log(2 * estimates / 0.01) / (2 * 10000.0));
  EXPECT_NEAR(report->sweep.front().radius, expected, 1e-15);
}

TEST(RunAttackTest, RejectsTooFewSamples) {
  EXPECT_EQ(RunAttack(*MechanismSpec::Laplace(1.0, 1.0), DpTradeoff(1, 0), 10, 0)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RunAttackTest, IndependentOfThreadCount) {
  const MechanismSpec spec = *MechanismSpec::Staircase(1.0, 0.3, 1.0);
  setenv("DPA_THREADS", "1", 1);
  const AttackReport one = *RunAttack(spec, DpTradeoff(1.0, 0.0), 50000, 9);
  setenv("DPA_THREADS", "4", 1);
  const AttackReport four = *RunAttack(spec, DpTradeoff(1.0, 0.0), 50000, 9);
  unsetenv("DPA_THREADS");
  ASSERT_EQ(one.sweep.size(), four.sweep.size());
  for (size_t i = 0; i < one.sweep.size(); ++i) {
    EXPECT_EQ(one.sweep[i].p_fa, four.sweep[i].p_fa);
    EXPECT_EQ(one.sweep[i].p_md, four.sweep[i].p_md);
  }
}

TEST(EmpiricalTradeoffTest, GaussianConvergesToGdpCurve) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(2.0, 1.0);
  const TradeoffCurve exact = *GaussianTradeoff(0.5);
  absl::StatusOr<TradeoffCurve> curve = EmpiricalTradeoff(spec, 1000000, 5);
  ASSERT_TRUE(curve.ok());
  EXPECT_EQ(curve->kind(), TradeoffCurve::Kind::kEmpirical);
  // Hoeffding radius at 10^6 samples and 99% over ~2000 estimates.
  EXPECT_LT(SupDistance(*curve, exact), 3e-3);
}

TEST(EmpiricalTradeoffTest, RandomizedResponseHasTwoKinks) {
  const MechanismSpec spec = *MechanismSpec::RandomizedResponse(1.0);
  absl::StatusOr<TradeoffCurve> curve = EmpiricalTradeoff(spec, 100000, 6);
  ASSERT_TRUE(curve.ok());
  EXPECT_LT(SupDistance(*curve, DpTradeoff(1.0, 0.0)), 1e-2);
}

TEST(EmpiricalTradeoffTest, NearIndependentChannelIsNearDiagonal) {
  const MechanismSpec spec = *MechanismSpec::Laplace(0.01, 1.0);
  absl::StatusOr<TradeoffCurve> curve = EmpiricalTradeoff(spec, 1000, 7);
  ASSERT_TRUE(curve.ok());
  // Radius at 1000 samples is ~0.06; the true curve is within 0.005 of 1 - x.
  EXPECT_LT(SupDistance(*curve, DpTradeoff(0.0, 0.0)), 0.07);
}

TEST(EmpiricalTradeoffTest, ErrorShrinksWithSamples) {
  const MechanismSpec spec = *MechanismSpec::Gaussian(1.0, 1.0);
  const TradeoffCurve exact = *GaussianTradeoff(1.0);
  double previous = 1;
  for (int64_t n : {1000, 100000}) {
    const double distance = SupDistance(*EmpiricalTradeoff(spec, n, 8), exact);
    EXPECT_LT(distance, previous);
    previous = distance;
  }
}

}  // namespace
}  // namespace dpa
