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
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"

namespace dpa {
namespace {

void DumpTo(const Json& value, int depth, std::string& out) {
  const std::string pad(2 * depth + 2, ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        absl::StrAppend(&out, pad, Json(key).dump(), ": ");
        DumpTo(item, depth + 1, out);
      }
      absl::StrAppend(&out, "\n", close_pad, "}");
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const Json& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        DumpTo(item, depth + 1, out);
      }
      absl::StrAppend(&out, "\n", close_pad, "]");
      return;
    }
    case Json::value_t::number_float: {
      const double number = value.get<double>();
      if (std::isfinite(number)) {
        out += FormatDouble(number);
      } else {
        absl::StrAppend(&out, "\"", FormatDouble(number), "\"");
      }
      return;
    }
    default:
      out += value.dump();
  }
}

absl::StatusOr<const Json*> Field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing JSON field \"", key, "\""));
  }
  return &json.at(key);
}

absl::StatusOr<double> DoubleField(const Json& json, const char* key) {
  absl::StatusOr<const Json*> field = Field(json, key);
  if (!field.ok()) return field.status();
  absl::StatusOr<double> value = JsonToDouble(**field);
  if (!value.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field \"", key, "\": ", value.status().message()));
  }
  return value;
}

absl::StatusOr<std::vector<double>> DoubleArrayField(const Json& json,
                                                     const char* key) {
  absl::StatusOr<const Json*> field = Field(json, key);
  if (!field.ok()) return field.status();
  if (!(*field)->is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field \"", key, "\" must be an array"));
  }
  std::vector<double> values;
  values.reserve((*field)->size());
  for (const Json& item : **field) {
    absl::StatusOr<double> value = JsonToDouble(item);
    if (!value.ok()) return value.status();
    values.push_back(*value);
  }
  return values;
}

// Splits CSV text into trimmed, non-empty lines.
std::vector<std::string> CsvLines(absl::string_view text) {
  std::vector<std::string> lines;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty()) lines.emplace_back(line);
  }
  return lines;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.17g", value);
}

std::string DumpJson(const Json& value) {
  std::string out;
  DumpTo(value, 0, out);
  out += "\n";
  return out;
}

absl::StatusOr<Json> ParseJson(absl::string_view text) {
  Json json = Json::parse(text.begin(), text.end(), nullptr,
                          /*allow_exceptions=*/false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError("malformed JSON input");
  }
  return json;
}

absl::StatusOr<double> JsonToDouble(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string& text = value.get_ref<const std::string&>();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  return absl::InvalidArgumentError("expected a number");
}

Json PldToJson(const PrivacyLossDistribution& pld) {
  Json json;
  json["grid_spacing"] = pld.grid_spacing();
  json["min_index"] = pld.min_index();
  json["masses"] = pld.masses();
  json["infinity_mass"] = pld.infinity_mass();
  json["pessimistic"] = pld.pessimistic();
  return json;
}

absl::StatusOr<PrivacyLossDistribution> PldFromJson(const Json& json) {
  absl::StatusOr<double> spacing = DoubleField(json, "grid_spacing");
  if (!spacing.ok()) return spacing.status();
  absl::StatusOr<const Json*> min_index = Field(json, "min_index");
  if (!min_index.ok()) return min_index.status();
  if (!(*min_index)->is_number_integer()) {
    return absl::InvalidArgumentError("min_index must be an integer");
  }
  absl::StatusOr<std::vector<double>> masses = DoubleArrayField(json, "masses");
  if (!masses.ok()) return masses.status();
  absl::StatusOr<double> infinity_mass = DoubleField(json, "infinity_mass");
  if (!infinity_mass.ok()) return infinity_mass.status();
  absl::StatusOr<const Json*> pessimistic = Field(json, "pessimistic");
  if (!pessimistic.ok()) return pessimistic.status();
  if (!(*pessimistic)->is_boolean()) {
    return absl::InvalidArgumentError("pessimistic must be a boolean");
  }
  return PrivacyLossDistribution::Create(
      *spacing, (*min_index)->get<int64_t>(), *std::move(masses),
      *infinity_mass, (*pessimistic)->get<bool>());
}

Json MechanismToJson(const MechanismSpec& spec) {
  Json params = Json::object();
  switch (spec.family()) {
    case MechanismFamily::kGaussian:
      params["sigma"] = spec.sigma();
      break;
    case MechanismFamily::kLaplace:
      params["lambda"] = spec.lambda();
      break;
    case MechanismFamily::kStaircase:
      params["epsilon"] = spec.epsilon();
      params["eta"] = spec.eta();
      break;
    case MechanismFamily::kRandomizedResponse:
      params["epsilon"] = spec.epsilon();
      break;
  }
  Json json;
  json["family"] = std::string(FamilyName(spec.family()));
  json["params"] = params;
  json["sensitivity"] = spec.sensitivity();
  return json;
}

absl::StatusOr<MechanismSpec> MechanismFromJson(const Json& json) {
  absl::StatusOr<const Json*> family_field = Field(json, "family");
  if (!family_field.ok()) return family_field.status();
  if (!(*family_field)->is_string()) {
    return absl::InvalidArgumentError("family must be a string");
  }
  absl::StatusOr<MechanismFamily> family =
      ParseFamily((*family_field)->get<std::string>());
  if (!family.ok()) return family.status();
  absl::StatusOr<const Json*> params = Field(json, "params");
  if (!params.ok()) return params.status();
  double sensitivity = 1.0;
  if (json.contains("sensitivity")) {
    absl::StatusOr<double> value = DoubleField(json, "sensitivity");
    if (!value.ok()) return value.status();
    sensitivity = *value;
  }
  switch (*family) {
    case MechanismFamily::kGaussian: {
      absl::StatusOr<double> sigma = DoubleField(**params, "sigma");
      if (!sigma.ok()) return sigma.status();
      return MechanismSpec::Gaussian(*sigma, sensitivity);
    }
    case MechanismFamily::kLaplace: {
      absl::StatusOr<double> lambda = DoubleField(**params, "lambda");
      if (!lambda.ok()) return lambda.status();
      return MechanismSpec::Laplace(*lambda, sensitivity);
    }
    case MechanismFamily::kStaircase: {
      absl::StatusOr<double> epsilon = DoubleField(**params, "epsilon");
      if (!epsilon.ok()) return epsilon.status();
      absl::StatusOr<double> eta = DoubleField(**params, "eta");
      if (!eta.ok()) return eta.status();
      return MechanismSpec::Staircase(*epsilon, *eta, sensitivity);
    }
    case MechanismFamily::kRandomizedResponse: {
      absl::StatusOr<double> epsilon = DoubleField(**params, "epsilon");
      if (!epsilon.ok()) return epsilon.status();
      return MechanismSpec::RandomizedResponse(*epsilon);
    }
  }
  return absl::InvalidArgumentError("unknown mechanism family");
}

Json NoiseToJson(const NoiseDistribution& noise) {
  Json json;
  json["grid_spacing"] = noise.grid_spacing();
  json["core_masses"] = noise.core_masses();
  json["tail_decay_rate"] = noise.tail_decay_rate();
  return json;
}

absl::StatusOr<NoiseDistribution> NoiseFromJson(const Json& json) {
  absl::StatusOr<double> spacing = DoubleField(json, "grid_spacing");
  if (!spacing.ok()) return spacing.status();
  absl::StatusOr<std::vector<double>> core = DoubleArrayField(json, "core_masses");
  if (!core.ok()) return core.status();
  absl::StatusOr<double> decay = DoubleField(json, "tail_decay_rate");
  if (!decay.ok()) return decay.status();
  return NoiseDistribution::Create(*spacing, *std::move(core), *decay);
}

Json AttackReportToJson(const AttackReport& report) {
  Json json;
  json["num_samples"] = report.num_samples;
  json["seed"] = report.seed;
  json["confidence"] = report.confidence;
  Json sweep = Json::array();
  for (const SweepPoint& point : report.sweep) {
    Json item;
    item["threshold"] = point.threshold;
    item["strict"] = point.strict;
    item["p_fa"] = point.p_fa;
    item["p_md"] = point.p_md;
    item["radius"] = point.radius;
    sweep.push_back(std::move(item));
  }
  Json violations = Json::array();
  for (const Violation& violation : report.violations) {
    Json item;
    item["p_fa"] = violation.p_fa;
    item["p_md"] = violation.p_md;
    item["bound_value"] = violation.bound_value;
    violations.push_back(std::move(item));
  }
  json["violation_count"] = report.violations.size();
  json["violations"] = std::move(violations);
  json["sweep"] = std::move(sweep);
  return json;
}

absl::string_view BoundKindName(BoundKind kind) {
  switch (kind) {
    case BoundKind::kUpper:
      return "upper";
    case BoundKind::kLower:
      return "lower";
    case BoundKind::kEstimate:
      return "estimate";
  }
  return "upper";
}

std::string PrivacyCurveToCsv(std::span<const PrivacyGuarantee> curve) {
  std::string out = "epsilon,delta,bound_kind\n";
  for (const PrivacyGuarantee& point : curve) {
    absl::StrAppend(&out, FormatDouble(point.epsilon), ",",
                    FormatDouble(point.delta), ",",
                    BoundKindName(point.bound_kind), "\n");
  }
  return out;
}

std::string TradeoffToCsv(std::span<const CurvePoint> points) {
  std::string out = "p_fa,p_md_lower\n";
  for (const CurvePoint& point : points) {
    absl::StrAppend(&out, FormatDouble(point.p_fa), ",",
                    FormatDouble(point.p_md), "\n");
  }
  return out;
}

absl::StatusOr<TradeoffCurve> TradeoffFromCsv(absl::string_view text) {
  const std::vector<std::string> lines = CsvLines(text);
  if (lines.empty() || lines[0] != "p_fa,p_md_lower") {
    return absl::InvalidArgumentError(
        "tradeoff CSV must start with the header p_fa,p_md_lower");
  }
  std::vector<CurvePoint> points;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<absl::string_view> cells = absl::StrSplit(lines[i], ',');
    CurvePoint point;
    if (cells.size() != 2 || !absl::SimpleAtod(cells[0], &point.p_fa) ||
        !absl::SimpleAtod(cells[1], &point.p_md)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("malformed tradeoff CSV row %d: %s", i + 1, lines[i]));
    }
    points.push_back(point);
  }
  return TabulatedTradeoff(std::move(points));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::InvalidArgumentError(absl::StrCat("cannot write ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace dpa
