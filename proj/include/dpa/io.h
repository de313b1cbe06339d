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

#ifndef DPA_IO_H_
#define DPA_IO_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpa/attack.h"
#include "dpa/divergences.h"
#include "dpa/mechanisms.h"
#include "dpa/noise_distribution.h"
#include "dpa/pld.h"
#include "dpa/tradeoff.h"
#include "json.hpp"

namespace dpa {

using Json = nlohmann::ordered_json;

// 17 significant digits; non-finite values print as inf, -inf or nan.
std::string FormatDouble(double value);

// Serializes with two-space indentation and every float at 17 significant
// digits, so that parsing the text back reproduces each double exactly.
// Non-finite floats are written as the strings "inf", "-inf" and "nan".
std::string DumpJson(const Json& value);
absl::StatusOr<Json> ParseJson(absl::string_view text);

// Reads a number that DumpJson may have written as a string.
absl::StatusOr<double> JsonToDouble(const Json& value);

Json PldToJson(const PrivacyLossDistribution& pld);
absl::StatusOr<PrivacyLossDistribution> PldFromJson(const Json& json);

// {"family": ..., "params": {...}, "sensitivity": ...}
Json MechanismToJson(const MechanismSpec& spec);
absl::StatusOr<MechanismSpec> MechanismFromJson(const Json& json);

Json NoiseToJson(const NoiseDistribution& noise);
absl::StatusOr<NoiseDistribution> NoiseFromJson(const Json& json);

Json AttackReportToJson(const AttackReport& report);

absl::string_view BoundKindName(BoundKind kind);

// Header epsilon,delta,bound_kind.
std::string PrivacyCurveToCsv(std::span<const PrivacyGuarantee> curve);
// Header p_fa,p_md_lower.
std::string TradeoffToCsv(std::span<const CurvePoint> points);
// Parses the p_fa,p_md_lower format into a tabulated curve.
absl::StatusOr<TradeoffCurve> TradeoffFromCsv(absl::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view contents);

}  // namespace dpa

#endif  // DPA_IO_H_
