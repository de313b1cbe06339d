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
#include <vector>

#include "Eigen/Dense"
#include "boost/math/quadrature/gauss.hpp"
#include "absl/strings/str_format.h"
#include "dpa/optimize.h"
#include "dpa/status_macros.h"

namespace dpa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBarrierGrowth = 20.0;
// Weight of the -log x_i terms. The KL summands already keep every mass
// positive, so these only regularize; a unit weight would add N + 1 to the
// barrier parameter and slow centering badly.
constexpr double kPositivityWeight = 1e-6;

// Mean of the cost over lattice cell i >= 0, i.e. over |z| in
// [(i - 1/2) h, (i + 1/2) h]. Charging cells by their average makes the
// problem at spacing h a restriction of the one at h / 2.
double CellAverageCost(const CostFunction& cost, int64_t i, double h) {
  const double a = i == 0 ? 0.0 : (static_cast<double>(i) - 0.5) * h;
  const double b = (static_cast<double>(i) + 0.5) * h;
  const double integral =
      cost.is_polynomial()
          ? cost.IntegrateAbsPolynomial(a, b)
          : boost::math::quadrature::gauss<double, 20>::integrate(
                [&](double z) { return cost(z); }, a, b);
  return integral / (b - a);
}

// One summand P_j log(P_j / P_{j-a}) of a shifted KL. Both masses are a
// single half-vector entry times a fixed geometric tail weight.
struct KlTerm {
  int numerator;
  int denominator;
  double log_weight_numerator;
  double log_weight_denominator;
};

// Worst-shift KL over the symmetric half vector x_0..x_N plus an epigraph
// variable t, with log barriers for t > KL_a, budget > cost, x > 0.
class CactusProblem {
 public:
  CactusProblem(int half_width, int max_shift, double spacing, double decay,
                const CostSpec& cost)
      : n_(half_width),
        shifts_(max_shift),
        log_decay_(std::log(decay)),
        budget_(cost.budget),
        mass_coeff_(half_width + 1, 2.0),
        cost_coeff_(half_width + 1, 0.0),
        terms_(max_shift) {
    mass_coeff_[0] = 1.0;
    mass_coeff_[n_] = 2.0 + 2.0 * decay / (1.0 - decay);
    for (int i = 0; i <= n_; ++i) {
      cost_coeff_[i] = (i == 0 ? 1.0 : 2.0) * CellAverageCost(cost.cost, i, spacing);
    }
    double weight = 1.0;
    for (int m = 1; m < (1 << 26); ++m) {
      weight *= decay;
      const double term =
          2.0 * weight * CellAverageCost(cost.cost, n_ + m, spacing);
      cost_coeff_[n_] += term;
      if (term <= 1e-18 * cost_coeff_[n_] && weight < 1e-18) break;
    }
    for (int a = 1; a <= shifts_; ++a) {
      std::vector<KlTerm>& list = terms_[a - 1];
      for (int j = -n_ - shifts_; j <= n_ + shifts_; ++j) {
        list.push_back({Index(j), Index(j - a), LogWeight(j), LogWeight(j - a)});
      }
    }
  }

  int dimension() const { return n_ + 2; }  // x_0..x_N, t
  double constraint_count() const { return shifts_ + 1 + kPositivityWeight * (n_ + 1); }
  const std::vector<double>& mass_coeff() const { return mass_coeff_; }
  const std::vector<double>& cost_coeff() const { return cost_coeff_; }
  double budget() const { return budget_; }

  double Cost(const Eigen::VectorXd& z) const {
    double cost = 0;
    for (int i = 0; i <= n_; ++i) cost += cost_coeff_[i] * z[i];
    return cost;
  }

  // KL for every shift; fills `log_x` as a by-product.
  std::vector<double> ShiftedKls(const Eigen::VectorXd& z,
                                 std::vector<double>& log_x) const {
    log_x.resize(n_ + 1);
    for (int i = 0; i <= n_; ++i) log_x[i] = std::log(z[i]);
    std::vector<double> kls(shifts_, 0.0);
    for (int a = 0; a < shifts_; ++a) {
      double kl = 0;
      for (const KlTerm& term : terms_[a]) {
        const double log_p = log_x[term.numerator] + term.log_weight_numerator;
        const double log_q =
            log_x[term.denominator] + term.log_weight_denominator;
        kl += std::exp(log_p) * (log_p - log_q);
      }
      kls[a] = kl;
    }
    return kls;
  }

  // Barrier objective; +infinity outside the domain.
  double Value(const Eigen::VectorXd& z, double tau) const {
    const double t = z[n_ + 1];
    for (int i = 0; i <= n_; ++i) {
      if (!(z[i] > 0)) return kInf;
    }
    const double slack_cost = budget_ - Cost(z);
    if (!(slack_cost > 0)) return kInf;
    std::vector<double> log_x;
    const std::vector<double> kls = ShiftedKls(z, log_x);
    double value = tau * t - std::log(slack_cost);
    for (double kl : kls) {
      if (!(t - kl > 0)) return kInf;
      value -= std::log(t - kl);
    }
    for (int i = 0; i <= n_; ++i) value -= kPositivityWeight * log_x[i];
    return value;
  }

  // Gradient and Hessian in the scaled coordinates z = S y, where
  // S = diag(x_0, ..., x_N, 1).
  void ScaledDerivatives(const Eigen::VectorXd& z, double tau,
                         Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const int dim = dimension();
    const double t = z[n_ + 1];
    grad.setZero(dim);
    hess.setZero(dim, dim);
    std::vector<double> log_x;
    const std::vector<double> kls = ShiftedKls(z, log_x);
    Eigen::MatrixXd outer(dim, shifts_);
    Eigen::VectorXd kl_grad(dim);
    for (int a = 0; a < shifts_; ++a) {
      const double inv_slack = 1.0 / (t - kls[a]);
      kl_grad.setZero();
      for (const KlTerm& term : terms_[a]) {
        const double log_p = log_x[term.numerator] + term.log_weight_numerator;
        const double log_q =
            log_x[term.denominator] + term.log_weight_denominator;
        const double p = std::exp(log_p);
        kl_grad[term.numerator] += p * (log_p - log_q + 1);
        kl_grad[term.denominator] -= p;
        // Scaled Hessian of p log(p / q) is p [[1, -1], [-1, 1]].
        const double w = p * inv_slack;
        hess(term.numerator, term.numerator) += w;
        hess(term.denominator, term.denominator) += w;
        hess(term.numerator, term.denominator) -= w;
        hess(term.denominator, term.numerator) -= w;
      }
      kl_grad[n_ + 1] = -1.0;
      grad += inv_slack * kl_grad;
      outer.col(a) = inv_slack * kl_grad;
    }
    hess.noalias() += outer * outer.transpose();

    const double inv_cost_slack = 1.0 / (budget_ - Cost(z));
    Eigen::VectorXd cost_grad = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i <= n_; ++i) cost_grad[i] = cost_coeff_[i] * z[i];
    grad += inv_cost_slack * cost_grad;
    hess.noalias() +=
        (inv_cost_slack * inv_cost_slack) * cost_grad * cost_grad.transpose();

    for (int i = 0; i <= n_; ++i) {
      grad[i] -= kPositivityWeight;
      hess(i, i) += kPositivityWeight;
    }
    grad[n_ + 1] += tau;
  }

  std::vector<double> FullMasses(const Eigen::VectorXd& z) const {
    std::vector<double> full(2 * n_ + 1);
    for (int j = -n_; j <= n_; ++j) full[n_ + j] = z[std::abs(j)];
    return full;
  }

 private:
  int Index(int j) const { return std::min(std::abs(j), n_); }
  double LogWeight(int j) const {
    return std::max(0, std::abs(j) - n_) * log_decay_;
  }

  int n_;
  int shifts_;
  double log_decay_;
  double budget_;
  std::vector<double> mass_coeff_;
  std::vector<double> cost_coeff_;
  std::vector<std::vector<KlTerm>> terms_;
};

// Discretized Laplace-shaped starting point using `fill` of the budget. Its
// tails stay far from underflow, which the barrier would otherwise spend
// hundreds of Newton steps growing out of.
Eigen::VectorXd StartingPoint(const CactusProblem& problem, int half_width,
                              double spacing, double fill) {
  const std::vector<double>& mass = problem.mass_coeff();
  auto make = [&](double width) {
    Eigen::VectorXd z(half_width + 2);
    double total = 0;
    for (int i = 0; i <= half_width; ++i) {
      z[i] = std::max(std::exp(-i * spacing / width), 1e-250);
      total += mass[i] * z[i];
    }
    for (int i = 0; i <= half_width; ++i) z[i] /= total;
    z[half_width + 1] = 0;
    return z;
  };
  double lo = 1e-3 * spacing;
  double hi = half_width * spacing;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (problem.Cost(make(mid)) > fill * problem.budget()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return make(lo);
}

}  // namespace

absl::StatusOr<CactusResult> SolveCactus(double sensitivity,
                                         const CostSpec& cost,
                                         const CactusOptions& options) {
  if (!(cost.budget > 0) || !std::isfinite(cost.budget)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("cost budget must be positive, got %g", cost.budget));
  }
  if (cost.cost(0.0) != 0.0) {
    return absl::InvalidArgumentError("Infeasible: cost must vanish at zero.");
  }
  if (!(options.tolerance > 0)) {
    return absl::InvalidArgumentError("tolerance must be positive.");
  }
  ASSIGN_OR_RETURN(const int64_t shifts,
                   LatticeCells(sensitivity, options.spacing));
  ASSIGN_OR_RETURN(const int64_t half_width,
                   LatticeCells(options.z_max, options.spacing));
  if (options.z_max < 5 * std::max(std::sqrt(cost.budget), sensitivity)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "z_max %g is below 5 * max(sqrt(budget), sensitivity) = %g",
        options.z_max, 5 * std::max(std::sqrt(cost.budget), sensitivity)));
  }
  if (half_width > 20000 || shifts > 20000) {
    return absl::ResourceExhaustedError(
        "lattice too fine for the dense interior-point solver.");
  }
  const double decay = options.tail_decay_rate > 0 ? options.tail_decay_rate
                                                   : std::exp(-options.spacing);
  if (!(decay < 1)) {
    return absl::InvalidArgumentError("tail_decay_rate must lie in (0, 1).");
  }

  const int n = static_cast<int>(half_width);
  const CactusProblem problem(n, static_cast<int>(shifts), options.spacing,
                              decay, cost);
  const int dim = problem.dimension();
  Eigen::VectorXd z = StartingPoint(problem, n, options.spacing, 0.8);
  {
    std::vector<double> log_x;
    const std::vector<double> kls = problem.ShiftedKls(z, log_x);
    z[n + 1] = *std::max_element(kls.begin(), kls.end()) + 1.0;
  }
  Eigen::VectorXd scaled_mass(dim);
  const double constraints = problem.constraint_count();

  double tau = 1.0;
  int steps = 0;
  bool converged = false;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  while (steps < options.max_newton_steps) {
    // Centering by equality-constrained Newton.
    bool centered = false;
    while (steps < options.max_newton_steps) {
      ++steps;
      problem.ScaledDerivatives(z, tau, grad, hess);
      for (int i = 0; i <= n; ++i) scaled_mass[i] = problem.mass_coeff()[i] * z[i];
      scaled_mass[n + 1] = 0;
      // Near the end of the barrier path the rank-one epigraph terms dwarf
      // the identity and rounding can break Cholesky; retry with a small
      // diagonal shift.
      Eigen::LLT<Eigen::MatrixXd> llt(hess);
      const double scale = hess.diagonal().maxCoeff();
      for (double shift = 1e-14; llt.info() != Eigen::Success; shift *= 100) {
        if (shift > 1e-4) {
          return NotConvergedError("barrier Hessian lost positive definiteness");
        }
        hess.diagonal().array() += shift * scale;
        llt.compute(hess);
      }
      const Eigen::VectorXd w_grad = llt.solve(grad);
      const Eigen::VectorXd w_mass = llt.solve(scaled_mass);
      const double nu = -scaled_mass.dot(w_grad) / scaled_mass.dot(w_mass);
      const Eigen::VectorXd dy = -w_grad - nu * w_mass;
      const double decrement = -grad.dot(dy);
      if (decrement / 2 <= 1e-9) {
        centered = true;
        break;
      }
      double step = 1.0;
      for (int i = 0; i <= n; ++i) {
        if (dy[i] < 0) step = std::min(step, -0.99 / dy[i]);
      }
      Eigen::VectorXd dz = dy;
      for (int i = 0; i <= n; ++i) dz[i] *= z[i];
      const double current = problem.Value(z, tau);
      bool moved = false;
      for (int back = 0; back < 60; ++back) {
        const Eigen::VectorXd trial = z + step * dz;
        const double value = problem.Value(trial, tau);
        if (value <= current - 0.01 * step * decrement) {
          z = trial;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        // No further progress is representable at this barrier weight.
        centered = true;
        break;
      }
    }
    if (!centered) break;
    if (constraints / tau < options.tolerance) {
      converged = true;
      break;
    }
    tau *= kBarrierGrowth;
  }

  std::vector<double> full = problem.FullMasses(z);
  double total = 0;
  for (int i = 0; i <= n; ++i) total += problem.mass_coeff()[i] * z[i];
  for (double& m : full) m /= total;
  ASSIGN_OR_RETURN(NoiseDistribution noise,
                   NoiseDistribution::Create(options.spacing, std::move(full),
                                             decay));
  CactusResult result{std::move(noise), 0.0, 0.0, converged, steps};
  for (int64_t a = 1; a <= shifts; ++a) {
    result.objective = std::max(result.objective, result.noise.ShiftedKl(a));
  }
  result.expected_cost = result.noise.ExpectedCost(cost.cost);
  return result;
}

}  // namespace dpa
