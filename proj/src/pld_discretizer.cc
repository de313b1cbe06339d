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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/exp_sinh.hpp"
#include "boost/math/quadrature/gauss_kronrod.hpp"
#include "dpa/pld.h"
#include "dpa/status_macros.h"

namespace dpa {
namespace {

constexpr int64_t kMaxGridCells = int64_t{1} << 27;
// Relative distance (in cells) under which a loss is treated as a grid point.
constexpr double kSnapCells = 1e-9;
constexpr double kCellQuadratureTolerance = 1e-11;

struct IndexRange {
  int64_t lo = std::numeric_limits<int64_t>::max();
  int64_t hi = std::numeric_limits<int64_t>::min();
  void Include(int64_t i) {
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  bool empty() const { return lo > hi; }
};

// Mass bookkeeping on grid nodes j*h and the open cells (j*h, (j+1)*h).
class GridAccumulator {
 public:
  GridAccumulator(double h, int64_t lo, int64_t hi)
      : h_(h),
        base_(lo),
        point_(hi - lo + 1, 0.0),
        cell_p_(hi - lo + 1, 0.0),
        cell_q_(hi - lo + 1, 0.0) {}

  int64_t base() const { return base_; }
  int64_t last() const { return base_ + static_cast<int64_t>(point_.size()) - 1; }

  void AddPoint(int64_t index, double mass) { point_[index - base_] += mass; }
  void AddCell(int64_t index, double p_mass, double q_mass) {
    cell_p_[index - base_] += p_mass;
    cell_q_[index - base_] += q_mass;
  }

  void AddAtom(double loss, double mass) {
    const double scaled = loss / h_;
    const double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) <= kSnapCells * std::max(1.0, std::abs(scaled))) {
      AddPoint(static_cast<int64_t>(nearest), mass);
    } else {
      AddCell(static_cast<int64_t>(std::floor(scaled)), mass,
              mass * std::exp(-loss));
    }
  }

  // Moves the outermost slots whose cumulative P-mass fits in the budgets
  // into the tails. Left-trimmed mass lands on the first retained node.
  // Returns the right-trimmed mass together with the highest retained node.
  std::pair<double, int64_t> TrimTails(double left_budget,
                                       double right_budget) {
    const int64_t n = static_cast<int64_t>(point_.size());
    int64_t first = 0;
    double left = 0;
    while (first < n - 2) {
      const double slot = point_[first] + cell_p_[first];
      if (left + slot > left_budget) break;
      left += slot;
      point_[first] = cell_p_[first] = cell_q_[first] = 0;
      ++first;
    }
    point_[first] += left;
    int64_t last = n - 1;
    double right = 0;
    while (last > first + 1) {
      const double slot = point_[last] + cell_p_[last];
      if (right + slot > right_budget) break;
      right += slot;
      point_[last] = cell_p_[last] = cell_q_[last] = 0;
      --last;
    }
    return {right, base_ + last};
  }

  std::vector<double> PlaceBoundary(bool pessimistic) const {
    std::vector<double> out(point_.size(), 0.0);
    for (size_t j = 0; j < point_.size(); ++j) {
      out[j] += point_[j];
      if (cell_p_[j] == 0) continue;
      const size_t target = pessimistic ? j + 1 : j;
      out[std::min(target, out.size() - 1)] += cell_p_[j];
    }
    return out;
  }

  // Splits each cell between its end nodes preserving its P- and Q-mass.
  std::vector<double> PlaceSplit() const {
    const double growth = std::exp(h_);
    std::vector<double> out(point_.size(), 0.0);
    for (size_t j = 0; j < point_.size(); ++j) {
      out[j] += point_[j];
      if (cell_p_[j] == 0) continue;
      const double ratio = ConditionalRatio(j);
      const double left =
          cell_p_[j] / ratio * (growth - ratio) / std::expm1(h_);
      out[j] += left;
      out[std::min(j + 1, out.size() - 1)] += cell_p_[j] - left;
    }
    return out;
  }

  // Optimistic interpolated placement; see CellPlacement::kInterpolated.
  std::vector<double> PlaceConvexMinorant() const {
    const size_t n = point_.size();
    const std::vector<double> split = PlaceSplit();
    // Hockey-stick value at each node: sum_{i>j} w_i (1 - e^{L_j - L_i}).
    std::vector<double> node_delta(n, 0.0);
    const double decay = std::exp(-h_);
    const double expm1_h = std::expm1(h_);
    double shifted = 0;  // sum_{i>j} w_i e^{L_j - L_i}
    for (size_t j = n - 1; j-- > 0;) {
      shifted = decay * (shifted + split[j + 1]);
      node_delta[j] = node_delta[j + 1] + expm1_h * shifted;
    }
    // Chord excess bound per cell: E_Q[(X - x_j)(x_{j+1} - X)] / dx with the
    // concave integrand bounded at the conditional mean.
    std::vector<double> excess(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
      if (cell_p_[j] == 0) continue;
      const double ratio = ConditionalRatio(j);
      excess[j] = cell_p_[j] / ratio * (ratio - 1) * (std::exp(h_) - ratio) /
                  expm1_h;
    }
    std::vector<double> lowered(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
      double slack = excess[j];
      if (j > 0) slack = std::max(slack, excess[j - 1]);
      lowered[j] = std::max(0.0, node_delta[j] - slack);
    }
    double finite_mass = 0;
    for (double w : split) finite_mass += w;

    // Lower convex hull in the coordinates (x_j = e^{L_j}, value), anchored
    // at (0, finite_mass). Slopes are compared after scaling by x_j.
    auto left_slope = [&](int64_t i, int64_t j) {
      // (v_j - v_i) * x_j / (x_j - x_i); i = -1 is the anchor at x = 0.
      const double vi = i < 0 ? finite_mass : lowered[i];
      const double denom =
          i < 0 ? 1.0 : -std::expm1(-static_cast<double>(j - i) * h_);
      return (lowered[j] - vi) / denom;
    };
    auto right_slope = [&](int64_t j, int64_t k) {
      return (lowered[k] - lowered[j]) /
             std::expm1(static_cast<double>(k - j) * h_);
    };
    std::vector<int64_t> hull = {-1};
    for (int64_t k = 0; k < static_cast<int64_t>(n); ++k) {
      while (hull.size() >= 2) {
        const int64_t j = hull.back();
        const int64_t i = hull[hull.size() - 2];
        if (left_slope(i, j) < right_slope(j, k)) break;
        hull.pop_back();
      }
      hull.push_back(k);
    }
    std::vector<double> out(n, 0.0);
    for (size_t v = 1; v < hull.size(); ++v) {
      const int64_t j = hull[v];
      const double before = left_slope(hull[v - 1], j);
      const double after = v + 1 < hull.size() ? right_slope(j, hull[v + 1]) : 0.0;
      out[j] = std::max(0.0, after - before);
    }
    return out;
  }

 private:
  // Q-conditional mean of e^L in cell j, divided by e^{L_j}; in [1, e^h].
  double ConditionalRatio(size_t j) const {
    const double node = static_cast<double>(base_ + static_cast<int64_t>(j)) * h_;
    double ratio = cell_p_[j] / (cell_q_[j] * std::exp(node));
    if (!std::isfinite(ratio)) ratio = 1.0;
    return std::clamp(ratio, 1.0, std::exp(h_));
  }

  double h_;
  int64_t base_;
  std::vector<double> point_;
  std::vector<double> cell_p_;
  std::vector<double> cell_q_;
};

using Integrand = std::function<double(double)>;

absl::StatusOr<double> IntegrateTail(const Integrand& density, double from,
                                     bool upward) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0;
  double value = 0;
  try {
    if (upward) {
      value = integrator.integrate(density, from,
                                   std::numeric_limits<double>::infinity(),
                                   1e-12, &error);
    } else {
      value = integrator.integrate(
          [&](double u) { return density(-u); }, -from,
          std::numeric_limits<double>::infinity(), 1e-12, &error);
    }
  } catch (const std::exception& e) {
    return NonIntegrableError(e.what());
  }
  if (!std::isfinite(value)) {
    return NonIntegrableError("tail integral is not finite");
  }
  return value;
}

// Finds a truncation point beyond which the density carries at most `budget`.
// Returns the truncation point and the tail mass beyond it.
absl::StatusOr<std::pair<double, double>> FindTruncation(
    const Integrand& density, double start, double budget, bool upward) {
  const double sign = upward ? 1.0 : -1.0;
  double inner = start;
  double step = 1.0;
  double outer = start + sign * step;
  ASSIGN_OR_RETURN(double tail, IntegrateTail(density, outer, upward));
  int expansions = 0;
  while (tail > budget) {
    if (++expansions > 60) {
      return NonIntegrableError("density tail does not decay");
    }
    inner = outer;
    step *= 2;
    outer = start + sign * step;
    ASSIGN_OR_RETURN(tail, IntegrateTail(density, outer, upward));
  }
  // Tighten the window; fewer cells without exceeding the budget.
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = 0.5 * (inner + outer);
    ASSIGN_OR_RETURN(double mid_tail, IntegrateTail(density, mid, upward));
    if (mid_tail > budget) {
      inner = mid;
    } else {
      outer = mid;
      tail = mid_tail;
    }
  }
  return std::make_pair(outer, tail);
}

absl::StatusOr<double> IntegrateCell(const Integrand& f, double a, double b) {
  double error = 0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, 8, kCellQuadratureTolerance, &error);
  if (!std::isfinite(value) ||
      error > 1e-6 * std::abs(value) + 1e-15) {
    return NonIntegrableError(absl::StrFormat(
        "cell [%g, %g] did not converge (error estimate %g)", a, b, error));
  }
  return value;
}

}  // namespace

absl::StatusOr<PrivacyLossDistribution> DiscretizePld(
    const LossMeasure& measure, const DiscretizationPolicy& policy) {
  RETURN_IF_ERROR(policy.Validate());
  const double h = policy.grid_spacing;
  const bool pessimistic = policy.rounding == EstimateType::kPessimistic;
  const double side_budget = 0.5 * policy.tail_mass_bound;

  double atom_mass = 0;
  IndexRange range;
  for (const LossAtom& atom : measure.atoms) {
    if (!(atom.mass >= 0) || !std::isfinite(atom.loss)) {
      return absl::InvalidArgumentError(
          "atoms need finite losses and non-negative masses.");
    }
    if (atom.mass == 0) continue;
    atom_mass += atom.mass;
    range.Include(static_cast<int64_t>(std::floor(atom.loss / h)));
    range.Include(static_cast<int64_t>(std::ceil(atom.loss / h)));
  }

  double window_lo = 0, window_hi = 0;
  double left_tail = 0, right_tail = 0;
  const bool has_density = static_cast<bool>(measure.density);
  if (has_density) {
    if (!(measure.support_min < measure.support_max)) {
      return absl::InvalidArgumentError("density support is empty.");
    }
    const double start =
        std::clamp(0.0, measure.support_min, measure.support_max);
    if (std::isfinite(measure.support_min)) {
      window_lo = measure.support_min;
    } else {
      ASSIGN_OR_RETURN(auto cut, FindTruncation(measure.density, start,
                                                side_budget, false));
      window_lo = cut.first;
      left_tail = cut.second;
    }
    if (std::isfinite(measure.support_max)) {
      window_hi = measure.support_max;
    } else {
      ASSIGN_OR_RETURN(auto cut, FindTruncation(measure.density, start,
                                                side_budget, true));
      window_hi = cut.first;
      right_tail = cut.second;
    }
    range.Include(static_cast<int64_t>(std::floor(window_lo / h)));
    range.Include(static_cast<int64_t>(std::ceil(window_hi / h)));
  }
  if (range.empty()) {
    // No finite loss at all: everything sits at +infinity.
    return PrivacyLossDistribution::Create(h, 0, {0.0}, 1.0, pessimistic);
  }
  // One extra node above the top so that upward-rounded mass has a home.
  range.Include(range.hi + 1);
  if (range.hi - range.lo + 1 > kMaxGridCells) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "loss range needs %d grid cells (limit %d); increase grid_spacing",
        range.hi - range.lo + 1, kMaxGridCells));
  }

  GridAccumulator grid(h, range.lo, range.hi);
  for (const LossAtom& atom : measure.atoms) {
    if (atom.mass > 0) grid.AddAtom(atom.loss, atom.mass);
  }

  double density_mass = left_tail + right_tail;
  if (has_density) {
    const bool need_q = policy.placement == CellPlacement::kInterpolated;
    const Integrand& f = measure.density;
    const Integrand f_q = [&f](double loss) { return f(loss) * std::exp(-loss); };
    const int64_t first = static_cast<int64_t>(std::floor(window_lo / h));
    const int64_t last = static_cast<int64_t>(std::ceil(window_hi / h));
    for (int64_t j = first; j < last; ++j) {
      const double a = std::max(static_cast<double>(j) * h, window_lo);
      const double b = std::min(static_cast<double>(j + 1) * h, window_hi);
      if (b - a <= 1e-12 * h) continue;
      ASSIGN_OR_RETURN(double p_mass, IntegrateCell(f, a, b));
      if (p_mass < 0) {
        return absl::InvalidArgumentError("density must be non-negative.");
      }
      double q_mass = 0;
      if (need_q && p_mass > 0) {
        ASSIGN_OR_RETURN(q_mass, IntegrateCell(f_q, a, b));
      }
      grid.AddCell(j, p_mass, q_mass);
      density_mass += p_mass;
    }
    grid.AddPoint(first, left_tail);
  }

  double true_infinity = 1.0 - density_mass - atom_mass;
  if (true_infinity < -1e-9) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "loss measure has total mass %.12g > 1", density_mass + atom_mass));
  }
  if (true_infinity < kMassTolerance) true_infinity = 0;

  // Atom-only measures can span huge ranges; spend the unused tail budget.
  const auto [trimmed_right, top_node] =
      grid.TrimTails(std::max(0.0, side_budget - left_tail),
                     std::max(0.0, side_budget - right_tail));
  double infinity_mass = true_infinity;
  if (pessimistic) {
    infinity_mass += right_tail + trimmed_right;
  } else {
    // Both tails sit at or above these nodes, so moving them down keeps the
    // optimistic direction.
    grid.AddPoint(top_node, trimmed_right);
    if (right_tail > 0) {
      grid.AddPoint(std::min(top_node, static_cast<int64_t>(
                                           std::floor(window_hi / h))),
                    right_tail);
    }
  }

  std::vector<double> placed;
  if (policy.placement == CellPlacement::kBoundary) {
    placed = grid.PlaceBoundary(pessimistic);
  } else if (pessimistic) {
    placed = grid.PlaceSplit();
  } else {
    placed = grid.PlaceConvexMinorant();
  }

  size_t lo = 0;
  size_t hi = placed.size();
  while (lo + 1 < hi && placed[lo] == 0) ++lo;
  while (hi > lo + 1 && placed[hi - 1] == 0) --hi;
  std::vector<double> masses(placed.begin() + lo, placed.begin() + hi);
  double finite = 0;
  for (double m : masses) finite += m;
  infinity_mass = std::clamp(infinity_mass, 0.0, 1.0);
  if (finite > 0) {
    const double scale = (1.0 - infinity_mass) / finite;
    for (double& m : masses) m *= scale;
  } else {
    infinity_mass = 1.0;
  }
  return PrivacyLossDistribution::Create(h, grid.base() + static_cast<int64_t>(lo),
                                         std::move(masses), infinity_mass,
                                         pessimistic);
}

absl::StatusOr<PrivacyLossDistribution> PldFromDiscretePair(
    std::span<const double> p, std::span<const double> q,
    const DiscretizationPolicy& policy) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "AlphabetMismatch: p has %d outcomes, q has %d", p.size(), q.size()));
  }
  double p_total = 0, q_total = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0) || !(q[i] >= 0)) {
      return absl::InvalidArgumentError("probabilities must be non-negative.");
    }
    p_total += p[i];
    q_total += q[i];
  }
  if (std::abs(p_total - 1) > 1e-9 || std::abs(q_total - 1) > 1e-9) {
    return absl::InvalidArgumentError("p and q must each sum to 1.");
  }
  LossMeasure measure;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0 || q[i] == 0) continue;
    measure.atoms.push_back({std::log(p[i] / q[i]), p[i] / p_total});
  }
  return DiscretizePld(measure, policy);
}

}  // namespace dpa
