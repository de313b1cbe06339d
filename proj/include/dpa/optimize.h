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

#ifndef DPA_OPTIMIZE_H_
#define DPA_OPTIMIZE_H_

#include "absl/status/statusor.h"
#include "dpa/cost.h"
#include "dpa/noise_distribution.h"

namespace dpa {

struct StaircaseFit {
  double eta = 0;
  double expected_cost = 0;
};

// Band width eta in [0, s] minimizing the expected cost of the staircase
// noise at fixed epsilon (golden-section search to 1e-9 in eta).
absl::StatusOr<StaircaseFit> FitStaircase(double epsilon, double sensitivity,
                                          const CostFunction& cost);

struct CactusOptions {
  double z_max = 6.0;
  double spacing = 0.01;
  // Target gap between the returned objective and the optimum of the
  // lattice-restricted problem.
  double tolerance = 1e-6;
  // Geometric tail ratio; 0 selects e^{-spacing}.
  double tail_decay_rate = 0;
  int max_newton_steps = 2000;
};

struct CactusResult {
  NoiseDistribution noise;
  // max over shifts a in {h, 2h, ..., s} of KL(p || p(. - a)).
  double objective = 0;
  double expected_cost = 0;
  bool converged = false;
  int newton_steps = 0;
};

// Minimizes the worst-shift KL divergence of symmetric lattice noise subject
// to E[c(Z)] <= budget. Solved with a log-barrier interior-point method on
// the epigraph form; every iterate is strictly feasible. When the step cap
// is hit the best iterate is returned with converged = false.
absl::StatusOr<CactusResult> SolveCactus(double sensitivity,
                                         const CostSpec& cost,
                                         const CactusOptions& options = {});

struct SchrodingerOptions {
  double z_max = 10.0;
  double ode_step = 0.01;
};

struct SchrodingerResult {
  NoiseDistribution noise;
  double theta = 0;
  double energy = 0;
  double expected_cost = 0;
};

// Ground state of y'' = (theta c(z) - E) y with p proportional to y^2; theta
// is tuned so that E[c(Z)] = budget within 1e-6.
absl::StatusOr<SchrodingerResult> SolveSchrodinger(
    const CostSpec& cost, const SchrodingerOptions& options = {});

}  // namespace dpa

#endif  // DPA_OPTIMIZE_H_
