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

#include "dpa/cli.h"

#include <sstream>
#include <string>
#include <vector>

#include "dpa/io.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpa {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult RunDpa(std::vector<std::string> args) {
  args.insert(args.begin(), "dpa");
  std::vector<const char*> argv;
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/dpa_cli_test_" + name;
}

double JsonNumber(const std::string& text, const char* key) {
  absl::StatusOr<Json> json = ParseJson(text);
  EXPECT_TRUE(json.ok()) << text;
  return *JsonToDouble((*json)[key]);
}

TEST(CliTest, VersionPrintsPolicy) {
  const RunResult result = RunDpa({"--version"});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find(kVersion), std::string::npos);
  EXPECT_NE(result.out.find("grid_spacing=0.0001"), std::string::npos);
}

TEST(CliTest, MechPldHappyPath) {
  const RunResult result =
      RunDpa({"mech", "pld", "--family", "gaussian", "--sigma", "1",
           "--sensitivity", "1"});
  ASSERT_EQ(result.code, 0) << result.err;
  absl::StatusOr<Json> json = ParseJson(result.out);
  ASSERT_TRUE(json.ok());
  EXPECT_TRUE(PldFromJson(*json).ok());
}

TEST(CliTest, ValidationErrorsExitTwo) {
  EXPECT_EQ(RunDpa({"--grid-spacing", "-1", "mech", "pld", "--family", "gaussian",
                 "--sigma", "1"})
                .code,
            kExitValidationError);
  EXPECT_EQ(RunDpa({"mech", "pld", "--family", "gaussian", "--sigma", "-2"}).code,
            kExitValidationError);
  EXPECT_EQ(RunDpa({"delta", "--pld", TempPath("missing.json"), "--eps", "1"}).code,
            kExitValidationError);
  EXPECT_EQ(RunDpa({"--bogus"}).code, kExitValidationError);
  EXPECT_EQ(RunDpa({}).code, kExitValidationError);
  const RunResult result = RunDpa({"--rounding", "sideways", "mech", "pld",
                                "--family", "laplace", "--lambda", "1"});
  EXPECT_EQ(result.code, kExitValidationError);
  EXPECT_EQ(std::count(result.err.begin(), result.err.end(), '\n'), 1);
}

TEST(CliTest, PipelineFromPldToDeltaAndCompose) {
  const std::string pld = TempPath("gauss.json");
  ASSERT_EQ(RunDpa({"--grid-spacing", "1e-3", "--out", pld, "mech", "pld",
                 "--family", "gaussian", "--sigma", "1"})
                .code,
            0);
  const RunResult delta = RunDpa({"delta", "--pld", pld, "--eps", "1"});
  ASSERT_EQ(delta.code, 0) << delta.err;
  EXPECT_NEAR(JsonNumber(delta.out, "delta"),
              testing::GaussianDelta(1.0, 1.0, 1.0), 2e-3);

  const RunResult epsilon = RunDpa({"epsilon", "--pld", pld, "--delta", "1e-5"});
  ASSERT_EQ(epsilon.code, 0) << epsilon.err;
  EXPECT_GT(JsonNumber(epsilon.out, "epsilon"), 4.0);

  const RunResult compose = RunDpa({"compose", "--pld", pld, "--k", "100",
                                 "--method", "fft", "--eps", "1"});
  ASSERT_EQ(compose.code, 0) << compose.err;
  // 100 copies of sigma = 1 compose to sigma = 0.1.
  EXPECT_NEAR(JsonNumber(compose.out, "delta"),
              testing::GaussianDelta(0.1, 1.0, 1.0), 1e-4);
  for (const char* method : {"basic", "rdp"}) {
    const RunResult other = RunDpa({"compose", "--pld", pld, "--k", "10",
                                 "--method", method, "--delta", "1e-5"});
    EXPECT_EQ(other.code, 0) << method << ": " << other.err;
  }
  // The pessimistic PLD has an infinity atom, which the CLT refuses as an
  // unmet input precondition.
  EXPECT_EQ(RunDpa({"compose", "--pld", pld, "--k", "10", "--method", "clt",
                    "--delta", "1e-5"})
                .code,
            kExitValidationError);
  const std::string optimistic = TempPath("gauss_optimistic.json");
  ASSERT_EQ(RunDpa({"--grid-spacing", "1e-3", "--rounding", "optimistic",
                    "--out", optimistic, "mech", "pld", "--family", "gaussian",
                    "--sigma", "1"})
                .code,
            0);
  const RunResult clt = RunDpa({"compose", "--pld", optimistic, "--k", "100",
                                "--method", "clt", "--eps", "1"});
  ASSERT_EQ(clt.code, 0) << clt.err;
  EXPECT_NEAR(JsonNumber(clt.out, "delta"),
              testing::GaussianDelta(0.1, 1.0, 1.0), 1e-3);
  EXPECT_EQ(RunDpa({"compose", "--pld", pld, "--k", "10", "--method", "magic",
                 "--eps", "1"})
                .code,
            kExitValidationError);
}

TEST(CliTest, CurvesAreCsv) {
  const std::string pld = TempPath("laplace.json");
  ASSERT_EQ(RunDpa({"--grid-spacing", "1e-3", "--out", pld, "mech", "pld",
                 "--family", "laplace", "--lambda", "1"})
                .code,
            0);
  const RunResult curve = RunDpa({"delta-curve", "--pld", pld, "--eps-min", "0",
                               "--eps-max", "2", "--points", "5"});
  ASSERT_EQ(curve.code, 0) << curve.err;
  EXPECT_EQ(curve.out.rfind("epsilon,delta,bound_kind\n", 0), 0u);
  EXPECT_EQ(std::count(curve.out.begin(), curve.out.end(), '\n'), 6);

  const RunResult tradeoff = RunDpa({"tradeoff", "--pld", pld, "--points", "11"});
  ASSERT_EQ(tradeoff.code, 0) << tradeoff.err;
  absl::StatusOr<TradeoffCurve> parsed = TradeoffFromCsv(tradeoff.out);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_NEAR(parsed->Evaluate(0.0), 1.0, 1e-12);
}

TEST(CliTest, AttackAndDeterminism) {
  const std::string mech = TempPath("mech.json");
  const std::string claimed = TempPath("claimed.csv");
  ASSERT_EQ(RunDpa({"--out", mech, "mech", "spec", "--family", "laplace",
                 "--lambda", "1"})
                .code,
            0);
  ASSERT_EQ(RunDpa({"--grid-spacing", "1e-3", "--out", claimed, "tradeoff",
                 "--mech", mech, "--points", "257"})
                .code,
            0);
  const std::vector<std::string> args = {"attack",    "--mech",    mech,
                                         "--claimed", claimed,     "--samples",
                                         "20000",     "--seed",    "42"};
  const RunResult first = RunDpa(args);
  const RunResult second = RunDpa(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(JsonNumber(first.out, "violation_count"), 0);
}

TEST(CliTest, OptimizeSubcommands) {
  const RunResult staircase =
      RunDpa({"optimize", "staircase", "--eps", "1", "--sensitivity", "1",
           "--cost", "quad"});
  ASSERT_EQ(staircase.code, 0) << staircase.err;
  EXPECT_LT(JsonNumber(staircase.out, "expected_cost"), 2.0);

  const std::string noise = TempPath("noise.json");
  const RunResult cactus =
      RunDpa({"--out", noise, "optimize", "cactus", "--sensitivity", "1", "--cost",
           "quad", "--budget", "0.25", "--zmax", "6", "--spacing", "0.05"});
  ASSERT_EQ(cactus.code, 0) << cactus.err;
  const RunResult pld = RunDpa({"--grid-spacing", "1e-3", "mech", "pld", "--noise",
                             noise, "--sensitivity", "1"});
  EXPECT_EQ(pld.code, 0) << pld.err;

  const RunResult capped =
      RunDpa({"optimize", "cactus", "--sensitivity", "1", "--budget", "0.25",
           "--spacing", "0.05", "--max-steps", "3"});
  EXPECT_EQ(capped.code, kExitNumericFailure);
  EXPECT_NE(capped.out.find("\"converged\": false"), std::string::npos);

  const RunResult schrodinger =
      RunDpa({"optimize", "schrodinger", "--cost", "abs", "--budget", "1"});
  EXPECT_EQ(schrodinger.code, 0) << schrodinger.err;
}

}  // namespace
}  // namespace dpa
