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

#include <cmath>

#include "absl/strings/str_format.h"
#include "dpa/mechanisms.h"
#include "dpa/optimize.h"
#include "dpa/status_macros.h"

namespace dpa {

absl::StatusOr<StaircaseFit> FitStaircase(double epsilon, double sensitivity,
                                          const CostFunction& cost) {
  if (!(epsilon > 0) || !(sensitivity > 0) || !std::isfinite(epsilon) ||
      !std::isfinite(sensitivity)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon and sensitivity must be positive, got %g and %g", epsilon,
        sensitivity));
  }
  auto cost_at = [&](double eta) -> absl::StatusOr<double> {
    ASSIGN_OR_RETURN(MechanismSpec spec,
                     MechanismSpec::Staircase(epsilon, eta, sensitivity));
    return ExpectedCost(spec, cost);
  };

  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double lo = 0;
  double hi = sensitivity;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  ASSIGN_OR_RETURN(double f1, cost_at(x1));
  ASSIGN_OR_RETURN(double f2, cost_at(x2));
  while (hi - lo > 1e-9) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      ASSIGN_OR_RETURN(f1, cost_at(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      ASSIGN_OR_RETURN(f2, cost_at(x2));
    }
  }
  StaircaseFit fit;
  fit.eta = 0.5 * (lo + hi);
  ASSIGN_OR_RETURN(fit.expected_cost, cost_at(fit.eta));
  // The interval ends are candidates too (the minimum may sit on a bound).
  for (double end : {0.0, sensitivity}) {
    ASSIGN_OR_RETURN(double value, cost_at(end));
    if (value < fit.expected_cost) fit = {end, value};
  }
  return fit;
}

}  // namespace dpa
