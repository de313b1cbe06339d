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

#ifndef DPA_COST_H_
#define DPA_COST_H_

#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpa {

// Even, non-negative noise cost c(z) with c(0) = 0. Costs that are
// polynomials in |z| keep their coefficients so that piecewise-constant
// densities can be integrated exactly.
class CostFunction {
 public:
  // sum_k coefficients[k] |z|^k. coefficients[0] must be 0.
  static absl::StatusOr<CostFunction> Polynomial(std::vector<double> coefficients,
                                                 std::string name = "poly");
  static CostFunction Quadratic();
  static CostFunction Absolute();
  // Arbitrary cost; the caller vouches for evenness and c(0) = 0.
  static CostFunction Custom(std::function<double(double)> cost,
                             std::string name = "custom");
  // "quad" or "abs".
  static absl::StatusOr<CostFunction> FromName(absl::string_view name);

  double operator()(double z) const;
  bool is_polynomial() const { return !coefficients_.empty(); }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::string& name() const { return name_; }

  // Integral of c over [a, b] with 0 <= a <= b (polynomial costs only).
  double IntegrateAbsPolynomial(double a, double b) const;

 private:
  CostFunction(std::function<double(double)> cost,
               std::vector<double> coefficients, std::string name)
      : cost_(std::move(cost)),
        coefficients_(std::move(coefficients)),
        name_(std::move(name)) {}

  std::function<double(double)> cost_;
  std::vector<double> coefficients_;
  std::string name_;
};

struct CostSpec {
  CostFunction cost = CostFunction::Quadratic();
  double budget = 1.0;
};

}  // namespace dpa

#endif  // DPA_COST_H_
