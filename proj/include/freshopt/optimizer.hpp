#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "freshopt/cost_model.hpp"
#include "freshopt/numerics.hpp"

namespace freshopt {

enum class SolveMethod { ClosedFormLinear, NumericRoot };

/// The unique cost-minimizing refresh interval and the cost there.
struct OptimalPolicy {
  double t_star = 0.0;
  CostReport cost_at_star;
  SolveMethod method = SolveMethod::NumericRoot;
};

/// Sign function of the cost derivative, phi(T) = T^2 C'(T):
///   phi(T) = -C_r + lambda * T * C_a(T) - lambda * integral(C_a, 0, T).
/// Strictly increasing from phi(0+) = -C_r to +inf; its zero is T*.
/// Requires T > 0 and scn.lambda() > 0.
double phi(const Scenario& scn, double interval);

/// Optimal refresh interval. Linear age costs take the closed form
/// T* = sqrt(2 C_r / (lambda C)); everything else solves phi(T) = 0 by
/// bracketed bisection. Requires lambda > 0 and refresh_cost > 0.
OptimalPolicy optimal_interval(const Scenario& scn, const RootConfig& cfg = {});

/// Same as optimal_interval but always solves numerically, bypassing the
/// Linear fast path (used to cross-check the two routes on Linear specs).
OptimalPolicy optimal_interval_numeric(const Scenario& scn,
                                       const RootConfig& cfg = {});

/// Closed forms of the linear-cost optimum:
/// (sqrt(2 C_r / (lambda C)), sqrt(2 lambda C C_r)). All arguments > 0.
std::pair<double, double> closed_form_linear(double lambda, double refresh_cost,
                                             double slope);

/// Optimal policies for an ascending grid of update rates (the optimal
/// interval strictly decreases along the grid).
std::vector<std::pair<double, OptimalPolicy>> sweep_lambda(
    const Scenario& scn_template, const std::vector<double>& lambdas);

/// Optimal policies for an ascending grid of refresh costs (the optimal
/// interval strictly increases along the grid).
std::vector<std::pair<double, OptimalPolicy>> sweep_refresh_cost(
    const Scenario& scn_template, const std::vector<double>& costs);

struct CostComparison {
  OptimalPolicy first;
  OptimalPolicy second;
  bool ordering_holds = false;  // t_star(first) >= t_star(second) - 1e-9
};

/// Optima for two scenarios sharing lambda and C_r whose cost difference
/// Delta(t) = C_a2(t) - C_a1(t) is nonnegative and nondecreasing, in which
/// case t_star1 >= t_star2. The Delta hypothesis is checked on a geometric
/// 64-point sample grid (plus t = 0); violations raise std::domain_error.
CostComparison compare_cost_functions(const Scenario& scn1,
                                      const Scenario& scn2,
                                      const RootConfig& cfg = {});

/// Age-cost surface for solvers that work on mixtures rather than a single
/// AgeCost (value and exact antiderivative of some strictly increasing,
/// unbounded cost function).
struct GenericAgeCost {
  std::function<double(double)> value;
  std::function<double(double)> integral;
};

/// Core solver behind optimal_interval, exposed for averaged (fleet) costs:
/// minimizes C_r/T + lambda * integral(T)/T over T > 0.
OptimalPolicy optimal_interval_generic(double lambda, double refresh_cost,
                                       const GenericAgeCost& cost,
                                       const RootConfig& cfg = {});

}  // namespace freshopt
