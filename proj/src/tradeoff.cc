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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "boost/math/distributions/normal.hpp"

namespace dpa {
namespace {

struct Line {
  double slope;
  double intercept;
  double At(double x) const { return intercept + slope * x; }
};

double Crossing(const Line& a, const Line& b) {
  return (a.intercept - b.intercept) / (b.slope - a.slope);
}

// Vertices over [0, 1] of max(0, upper envelope of lines).
std::vector<CurvePoint> EnvelopeVertices(std::vector<Line> lines) {
  lines.push_back({0.0, 0.0});
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.slope < b.slope ||
           (a.slope == b.slope && a.intercept > b.intercept);
  });
  std::vector<Line> hull;
  for (const Line& line : lines) {
    if (!hull.empty() && hull.back().slope == line.slope) continue;
    while (hull.size() >= 2) {
      const Line& first = hull[hull.size() - 2];
      const Line& middle = hull.back();
      if (Crossing(first, line) > Crossing(first, middle)) break;
      hull.pop_back();
    }
    hull.push_back(line);
  }
  std::vector<CurvePoint> vertices;
  size_t k = 0;
  while (k + 1 < hull.size() && Crossing(hull[k], hull[k + 1]) <= 0) ++k;
  vertices.push_back({0.0, std::clamp(hull[k].At(0.0), 0.0, 1.0)});
  for (; k + 1 < hull.size(); ++k) {
    const double x = Crossing(hull[k], hull[k + 1]);
    if (x >= 1) break;
    vertices.push_back({x, std::clamp(hull[k].At(x), 0.0, 1.0)});
  }
  vertices.push_back({1.0, std::clamp(hull[k].At(1.0), 0.0, 1.0)});
  return vertices;
}

// Hockey-stick value at every grid loss of the PLD, via
// delta_j = delta_{j+1} + (e^h - 1) * sum_{i>j} m_i e^{L_j - L_i}.
std::vector<double> DeltaAtGridLosses(const PrivacyLossDistribution& pld) {
  const std::vector<double>& m = pld.masses();
  const double h = pld.grid_spacing();
  const double decay = std::exp(-h);
  const double growth = std::expm1(h);
  std::vector<double> delta(m.size(), 0.0);
  delta.back() = pld.infinity_mass();
  double shifted = 0;
  for (size_t j = m.size() - 1; j-- > 0;) {
    shifted = decay * (shifted + m[j + 1]);
    delta[j] = delta[j + 1] + growth * shifted;
  }
  for (double& d : delta) d = std::min(d, 1.0);
  return delta;
}

double Interpolate(const std::vector<CurvePoint>& v, double x) {
  if (x <= v.front().p_fa) return v.front().p_md;
  if (x >= v.back().p_fa) return v.back().p_md;
  auto it = std::upper_bound(
      v.begin(), v.end(), x,
      [](double value, const CurvePoint& p) { return value < p.p_fa; });
  const CurvePoint& right = *it;
  const CurvePoint& left = *(it - 1);
  const double width = right.p_fa - left.p_fa;
  if (width <= 0) return std::min(left.p_md, right.p_md);
  const double t = (x - left.p_fa) / width;
  return left.p_md + t * (right.p_md - left.p_md);
}

}  // namespace

double TradeoffCurve::Evaluate(double p_fa) const {
  const double x = std::clamp(p_fa, 0.0, 1.0);
  switch (kind_) {
    case Kind::kPiecewiseLinear: {
      const double slack = 1 - delta_;
      return std::max({0.0, slack - std::exp(epsilon_) * x,
                       std::exp(-epsilon_) * (slack - x)});
    }
    case Kind::kGaussian: {
      if (x <= 0) return 1.0;
      if (x >= 1) return 0.0;
      const boost::math::normal standard;
      return boost::math::cdf(
          standard, boost::math::quantile(boost::math::complement(standard, x)) -
                        mu_);
    }
    default:
      return Interpolate(vertices_, x);
  }
}

std::vector<CurvePoint> TradeoffCurve::Sample(int points) const {
  points = std::max(points, 2);
  std::vector<CurvePoint> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / (points - 1);
    out.push_back({x, Evaluate(x)});
  }
  return out;
}

TradeoffCurve DpTradeoff(double epsilon, double delta) {
  TradeoffCurve curve(TradeoffCurve::Kind::kPiecewiseLinear);
  curve.epsilon_ = epsilon;
  curve.delta_ = delta;
  const double slack = 1 - delta;
  const double kink = slack / (1 + std::exp(epsilon));
  curve.vertices_ = {{0.0, slack},
                     {kink, std::exp(-epsilon) * (slack - kink)},
                     {slack, 0.0}};
  if (slack < 1) curve.vertices_.push_back({1.0, 0.0});
  return curve;
}

absl::StatusOr<TradeoffCurve> GaussianTradeoff(double mu) {
  if (!(mu > 0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mu must be positive and finite, got %g", mu));
  }
  TradeoffCurve curve(TradeoffCurve::Kind::kGaussian);
  curve.mu_ = mu;
  return curve;
}

TradeoffCurve TradeoffFromPld(const PrivacyLossDistribution& forward,
                              const PrivacyLossDistribution& reverse) {
  std::vector<Line> lines;
  lines.reserve(forward.size() + reverse.size());
  // Q(reject H0) - e^eps P(reject H0) <= delta_reverse(eps).
  const std::vector<double> delta_rev = DeltaAtGridLosses(reverse);
  for (size_t j = 0; j < reverse.size(); ++j) {
    const double loss = reverse.LossAt(j);
    lines.push_back({-std::exp(loss), 1 - delta_rev[j]});
  }
  // P(accept H0) - e^eps Q(accept H0) <= delta_forward(eps).
  const std::vector<double> delta_fwd = DeltaAtGridLosses(forward);
  for (size_t i = 0; i < forward.size(); ++i) {
    const double scale = std::exp(-forward.LossAt(i));
    lines.push_back({-scale, scale * (1 - delta_fwd[i])});
  }
  TradeoffCurve curve(TradeoffCurve::Kind::kFromPld);
  curve.vertices_ = EnvelopeVertices(std::move(lines));
  return curve;
}

TradeoffCurve EmpiricalTradeoffFromPoints(std::vector<CurvePoint> points) {
  points.push_back({0.0, 1.0});
  points.push_back({1.0, 0.0});
  for (CurvePoint& p : points) {
    p.p_fa = std::clamp(p.p_fa, 0.0, 1.0);
    p.p_md = std::clamp(p.p_md, 0.0, 1.0);
  }
  std::sort(points.begin(), points.end(),
            [](const CurvePoint& a, const CurvePoint& b) {
              return a.p_fa < b.p_fa || (a.p_fa == b.p_fa && a.p_md < b.p_md);
            });
  std::vector<CurvePoint> hull;
  for (const CurvePoint& p : points) {
    if (!hull.empty() && hull.back().p_fa == p.p_fa) continue;
    while (hull.size() >= 2) {
      const CurvePoint& a = hull[hull.size() - 2];
      const CurvePoint& b = hull.back();
      const double cross = (b.p_fa - a.p_fa) * (p.p_md - a.p_md) -
                           (b.p_md - a.p_md) * (p.p_fa - a.p_fa);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  TradeoffCurve curve(TradeoffCurve::Kind::kEmpirical);
  curve.vertices_ = std::move(hull);
  return curve;
}

absl::StatusOr<TradeoffCurve> TabulatedTradeoff(std::vector<CurvePoint> points) {
  if (points.empty()) {
    return absl::InvalidArgumentError("tradeoff table is empty.");
  }
  for (const CurvePoint& p : points) {
    if (!(p.p_fa >= 0 && p.p_fa <= 1 && p.p_md >= 0 && p.p_md <= 1)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "tradeoff point (%g, %g) outside [0, 1]^2", p.p_fa, p.p_md));
    }
  }
  std::sort(points.begin(), points.end(),
            [](const CurvePoint& a, const CurvePoint& b) {
              return a.p_fa < b.p_fa;
            });
  TradeoffCurve curve(TradeoffCurve::Kind::kTabulated);
  curve.vertices_ = std::move(points);
  return curve;
}

bool Dominates(const TradeoffCurve& lower, const TradeoffCurve& upper,
               int grid_points) {
  grid_points = std::max(grid_points, 2);
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    if (upper.Evaluate(x) < lower.Evaluate(x) - 1e-12) return false;
  }
  return true;
}

double SupDistance(const TradeoffCurve& a, const TradeoffCurve& b,
                   int grid_points) {
  grid_points = std::max(grid_points, 2);
  double worst = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    worst = std::max(worst, std::abs(a.Evaluate(x) - b.Evaluate(x)));
  }
  return worst;
}

}  // namespace dpa
