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

#include "dpa/io.h"

#include <cmath>
#include <string>
#include <vector>

#include "dpa/mechanisms.h"
#include "gtest/gtest.h"

namespace dpa {
namespace {

TEST(JsonTest, PldRoundTripIsExact) {
  const PrivacyLossDistribution pld =
      *MechanismPld(*MechanismSpec::Gaussian(1.0, 1.0), DiscretizationPolicy{});
  const std::string text = DumpJson(PldToJson(pld));
  absl::StatusOr<Json> json = ParseJson(text);
  ASSERT_TRUE(json.ok());
  absl::StatusOr<PrivacyLossDistribution> back = PldFromJson(*json);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->grid_spacing(), pld.grid_spacing());
  EXPECT_EQ(back->min_index(), pld.min_index());
  EXPECT_EQ(back->masses(), pld.masses());
  EXPECT_EQ(back->infinity_mass(), pld.infinity_mass());
  EXPECT_EQ(back->pessimistic(), pld.pessimistic());
  EXPECT_EQ(DumpJson(PldToJson(*back)), text);
}

TEST(JsonTest, FloatsUseSeventeenDigits) {
  Json json;
  json["x"] = 0.1;
  json["inf"] = std::numeric_limits<double>::infinity();
  const std::string text = DumpJson(json);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos) << text;
  EXPECT_NE(text.find("\"inf\""), std::string::npos) << text;
  absl::StatusOr<Json> back = ParseJson(text);
  ASSERT_TRUE(back.ok());
  EXPECT_TRUE(std::isinf(*JsonToDouble((*back)["inf"])));
}

TEST(JsonTest, MalformedInput) {
  EXPECT_FALSE(ParseJson("{\"a\": ").ok());
  absl::StatusOr<Json> json = ParseJson("{\"grid_spacing\": 0.1}");
  ASSERT_TRUE(json.ok());
  EXPECT_EQ(PldFromJson(*json).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(JsonTest, MechanismRoundTrip) {
  for (MechanismSpec spec :
       {*MechanismSpec::Gaussian(1.5, 2.0), *MechanismSpec::Laplace(0.5, 1.0),
        *MechanismSpec::Staircase(1.0, 0.25, 1.0),
        *MechanismSpec::RandomizedResponse(0.7)}) {
    const Json json = MechanismToJson(spec);
    absl::StatusOr<MechanismSpec> back = MechanismFromJson(json);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(DumpJson(MechanismToJson(*back)), DumpJson(json));
  }
  absl::StatusOr<Json> bad =
      ParseJson(R"({"family": "gaussian", "params": {}, "sensitivity": 1})");
  EXPECT_FALSE(MechanismFromJson(*bad).ok());
}

TEST(JsonTest, NoiseRoundTrip) {
  const NoiseDistribution noise =
      *NoiseDistribution::Create(0.1, {0.2, 0.4, 0.2}, 1.0 / 3);
  absl::StatusOr<NoiseDistribution> back = NoiseFromJson(NoiseToJson(noise));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->core_masses(), noise.core_masses());
  EXPECT_EQ(back->tail_decay_rate(), noise.tail_decay_rate());
}

TEST(CsvTest, PrivacyCurve) {
  const std::vector<PrivacyGuarantee> curve = {{0.5, 0.25, BoundKind::kUpper},
                                               {1.0, 0.125, BoundKind::kLower}};
  EXPECT_EQ(PrivacyCurveToCsv(curve),
            "epsilon,delta,bound_kind\n0.5,0.25,upper\n1,0.125,lower\n");
}

TEST(CsvTest, TradeoffRoundTrip) {
  const std::vector<CurvePoint> points = DpTradeoff(1.0, 0.0).Sample(33);
  const std::string text = TradeoffToCsv(points);
  EXPECT_EQ(text.rfind("p_fa,p_md_lower\n", 0), 0u);
  absl::StatusOr<TradeoffCurve> curve = TradeoffFromCsv(text);
  ASSERT_TRUE(curve.ok()) << curve.status();
  for (const CurvePoint& point : points) {
    EXPECT_NEAR(curve->Evaluate(point.p_fa), point.p_md, 1e-15);
  }
  EXPECT_FALSE(TradeoffFromCsv("x,y\n0,1\n").ok());
  EXPECT_FALSE(TradeoffFromCsv("p_fa,p_md_lower\n0;1\n").ok());
}

}  // namespace
}  // namespace dpa
