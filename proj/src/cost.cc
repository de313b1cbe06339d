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

#include "dpa/cost.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace dpa {

absl::StatusOr<CostFunction> CostFunction::Polynomial(
    std::vector<double> coefficients, std::string name) {
  if (coefficients.size() < 2 || coefficients[0] != 0) {
    return absl::InvalidArgumentError(
        "polynomial cost needs c(0) = 0 and degree >= 1.");
  }
  for (double c : coefficients) {
    if (!(c >= 0) || !std::isfinite(c)) {
      return absl::InvalidArgumentError(
          "polynomial cost coefficients must be finite and non-negative.");
    }
  }
  auto eval = [coefficients](double z) {
    const double x = std::abs(z);
    double value = 0;
    for (size_t k = coefficients.size(); k-- > 0;) value = value * x + coefficients[k];
    return value;
  };
  return CostFunction(std::move(eval), std::move(coefficients), std::move(name));
}

CostFunction CostFunction::Quadratic() {
  return *Polynomial({0.0, 0.0, 1.0}, "quad");
}

CostFunction CostFunction::Absolute() { return *Polynomial({0.0, 1.0}, "abs"); }

CostFunction CostFunction::Custom(std::function<double(double)> cost,
                                  std::string name) {
  return CostFunction(std::move(cost), {}, std::move(name));
}

absl::StatusOr<CostFunction> CostFunction::FromName(absl::string_view name) {
  if (name == "quad") return Quadratic();
  if (name == "abs") return Absolute();
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown cost '%s' (expected quad or abs)", name));
}

double CostFunction::operator()(double z) const { return cost_(z); }

double CostFunction::IntegrateAbsPolynomial(double a, double b) const {
  double total = 0;
  double pa = a;
  double pb = b;
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    // pa = a^{k+1}, pb = b^{k+1}
    if (coefficients_[k] != 0) {
      total += coefficients_[k] * (pb - pa) / static_cast<double>(k + 1);
    }
    pa *= a;
    pb *= b;
  }
  return total;
}

}  // namespace dpa
