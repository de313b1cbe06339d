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

#include "dpa/tradeoff.h"

#include <cmath>
#include <vector>

#include "dpa/mechanisms.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpa {
namespace {

TEST(DpTradeoffTest, PiecewiseLinearShape) {
  const TradeoffCurve curve = DpTradeoff(1.0, 0.0);
  const double e = std::exp(1.0);
  EXPECT_DOUBLE_EQ(curve.Evaluate(0.0), 1.0);
  EXPECT_NEAR(curve.Evaluate(1 / (1 + e)), 1 / (1 + e), 1e-15);
  EXPECT_NEAR(curve.Evaluate(0.1), 1 - e * 0.1, 1e-15);
  EXPECT_NEAR(curve.Evaluate(0.9), (1 - 0.9) / e, 1e-15);
  EXPECT_DOUBLE_EQ(curve.Evaluate(1.0), 0.0);

  const TradeoffCurve with_delta = DpTradeoff(0.0, 0.2);
  EXPECT_NEAR(with_delta.Evaluate(0.0), 0.8, 1e-15);
  EXPECT_NEAR(with_delta.Evaluate(0.9), 0.0, 1e-15);
}

TEST(GaussianTradeoffTest, ClosedForm) {
  absl::StatusOr<TradeoffCurve> curve = GaussianTradeoff(1.0);
  ASSERT_TRUE(curve.ok());
  // Phi(Phi^{-1}(1 - x) - 1) at x = 1 - Phi(0.5) is Phi(-0.5).
  const double x = 1 - testing::Phi(0.5);
  EXPECT_NEAR(curve->Evaluate(x), testing::Phi(-0.5), 1e-12);
  EXPECT_FALSE(GaussianTradeoff(-1.0).ok());
}

TEST(TradeoffFromPldTest, GaussianPldMatchesGdpCurve) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{});
  const TradeoffCurve from_pld = TradeoffFromPld(pld, pld);
  const TradeoffCurve exact = *GaussianTradeoff(1.0);
  EXPECT_LT(SupDistance(from_pld, exact), 1e-3);
  // Pessimistic input gives a lower bound.
  EXPECT_TRUE(Dominates(from_pld, exact));
}

TEST(TradeoffFromPldTest, LaplaceIsAboveItsDpCurve) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Laplace(1.0, 1.0), DiscretizationPolicy{});
  const TradeoffCurve curve = TradeoffFromPld(pld, pld);
  EXPECT_TRUE(Dominates(DpTradeoff(1.0, 0.0), curve));
  EXPECT_FALSE(Dominates(DpTradeoff(0.5, 0.0), curve));
}

TEST(EmpiricalTradeoffFromPointsTest, LowerConvexHull) {
  const TradeoffCurve curve = EmpiricalTradeoffFromPoints(
      {{0.25, 0.25}, {0.5, 0.4}, {0.1, 0.9}});
  // (0.5, 0.4) lies above the chord from (0.25, 0.25) to (1, 0).
  EXPECT_NEAR(curve.Evaluate(0.5), 0.25 * 0.5 / 0.75, 1e-12);
  EXPECT_NEAR(curve.Evaluate(0.25), 0.25, 1e-12);
  EXPECT_NEAR(curve.Evaluate(0.0), 1.0, 1e-12);
  EXPECT_EQ(curve.kind(), TradeoffCurve::Kind::kEmpirical);
}

TEST(TabulatedTradeoffTest, ValidatesAndInterpolates) {
  absl::StatusOr<TradeoffCurve> curve =
      TabulatedTradeoff({{1.0, 0.0}, {0.0, 1.0}});
  ASSERT_TRUE(curve.ok());
  EXPECT_NEAR(curve->Evaluate(0.3), 0.7, 1e-15);
  EXPECT_FALSE(TabulatedTradeoff({{1.5, 0.0}}).ok());
}

TEST(TradeoffCurveTest, SampleSpansUnitInterval) {
  const std::vector<CurvePoint> points = DpTradeoff(0.5, 0.01).Sample(11);
  ASSERT_EQ(points.size(), 11u);
  EXPECT_DOUBLE_EQ(points.front().p_fa, 0.0);
  EXPECT_DOUBLE_EQ(points.back().p_fa, 1.0);
}

}  // namespace
}  // namespace dpa
