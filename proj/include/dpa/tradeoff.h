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

#ifndef DPA_TRADEOFF_H_
#define DPA_TRADEOFF_H_

#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpa/pld.h"

namespace dpa {

struct CurvePoint {
  double p_fa;
  double p_md;
};

inline constexpr int kDefaultCurveGridPoints = 2048;

// Lower bound on the missed-detection probability of any test, as a
// function of its false-alarm probability. Copyable value type.
class TradeoffCurve {
 public:
  enum class Kind { kPiecewiseLinear, kGaussian, kFromPld, kEmpirical, kTabulated };

  Kind kind() const { return kind_; }
  // (epsilon, delta) for kPiecewiseLinear, mu for kGaussian.
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double mu() const { return mu_; }
  // Vertices of the piecewise-linear representation, sorted by p_fa,
  // spanning [0, 1]. Empty for kGaussian.
  const std::vector<CurvePoint>& vertices() const { return vertices_; }

  // Curve value at p_fa (clamped to [0, 1]).
  double Evaluate(double p_fa) const;

  // Samples the curve on a uniform grid of `points` >= 2 values in [0, 1].
  std::vector<CurvePoint> Sample(int points = kDefaultCurveGridPoints) const;

 private:
  friend TradeoffCurve DpTradeoff(double, double);
  friend absl::StatusOr<TradeoffCurve> GaussianTradeoff(double);
  friend TradeoffCurve TradeoffFromPld(const PrivacyLossDistribution&,
                                       const PrivacyLossDistribution&);
  friend TradeoffCurve EmpiricalTradeoffFromPoints(std::vector<CurvePoint>);
  friend absl::StatusOr<TradeoffCurve> TabulatedTradeoff(
      std::vector<CurvePoint>);

  explicit TradeoffCurve(Kind kind) : kind_(kind) {}

  Kind kind_;
  double epsilon_ = 0;
  double delta_ = 0;
  double mu_ = 0;
  std::vector<CurvePoint> vertices_;
};

// max{0, 1 - delta - e^eps x, e^-eps (1 - delta - x)}.
TradeoffCurve DpTradeoff(double epsilon, double delta);

// x -> Phi(Phi^{-1}(1 - x) - mu).
absl::StatusOr<TradeoffCurve> GaussianTradeoff(double mu);

// Optimal tradeoff of the pair (P, Q) from the PLD of P against Q and of Q
// against P. Every supporting line comes from a hockey-stick value, so the
// curve is a lower bound whenever both inputs are pessimistic.
TradeoffCurve TradeoffFromPld(const PrivacyLossDistribution& forward,
                              const PrivacyLossDistribution& reverse);

// Lower convex hull of (p_fa, p_md) estimates together with (0, 1) and
// (1, 0), linearly interpolated.
TradeoffCurve EmpiricalTradeoffFromPoints(std::vector<CurvePoint> points);

// Curve given by a table of points, linearly interpolated. Points must have
// p_fa in [0, 1] and p_md in [0, 1]; the table is sorted internally.
absl::StatusOr<TradeoffCurve> TabulatedTradeoff(std::vector<CurvePoint> points);

// True iff upper(x) >= lower(x) - 1e-12 at grid_points uniformly spaced
// x in [0, 1]. A sampled check, not a certificate.
bool Dominates(const TradeoffCurve& lower, const TradeoffCurve& upper,
               int grid_points = 1000);

// Largest |a(x) - b(x)| over a uniform grid.
double SupDistance(const TradeoffCurve& a, const TradeoffCurve& b,
                   int grid_points = kDefaultCurveGridPoints);

}  // namespace dpa

#endif  // DPA_TRADEOFF_H_
