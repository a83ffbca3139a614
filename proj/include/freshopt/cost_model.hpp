#pragma once

#include <variant>
#include <vector>

namespace freshopt {

/// Age-related cost function C_a(t): nondecreasing, positive, differentiable
/// a.e. with C_a'(t) > 0 and C_a(t) -> inf as t -> inf. Four variants; each
/// provides exact evaluation, exact antiderivative and a.e. derivative, so no
/// quadrature is needed anywhere on the optimization path.
///
/// Immutable after construction; all member functions are pure.
class AgeCost {
 public:
  struct Linear {
    double slope;  // C_a(t) = slope * t, slope > 0
  };
  struct Power {
    double coeff;     // a > 0
    double exponent;  // p > 0; C_a(t) = a * t^p
  };
  struct Exponential {
    double scale;  // a > 0
    double rate;   // b > 0; C_a(t) = a * (e^{b t} - 1)
  };
  struct TablePoint {
    double t;
    double c;
  };
  struct Table {
    // Breakpoints with t[0] = 0, strictly increasing t and c; piecewise
    // linear between points, extrapolated past the last point with the
    // final segment's slope.
    std::vector<TablePoint> points;
  };
  using Spec = std::variant<Linear, Power, Exponential, Table>;

  enum class Kind { Linear, Power, Exponential, Table };

  /// Validates the variant's constraints; throws std::domain_error on violation.
  explicit AgeCost(Spec spec);

  static AgeCost linear(double slope) { return AgeCost(Linear{slope}); }
  static AgeCost power(double coeff, double exponent) {
    return AgeCost(Power{coeff, exponent});
  }
  static AgeCost exponential(double scale, double rate) {
    return AgeCost(Exponential{scale, rate});
  }
  static AgeCost table(std::vector<TablePoint> points) {
    return AgeCost(Table{std::move(points)});
  }

  /// C_a(t) for t >= 0; throws std::domain_error for t < 0.
  double value(double t) const;

  /// Exact antiderivative: integral of C_a over [0, t], t >= 0.
  double integral(double t) const;

  /// C_a'(t) for t >= 0 (right-derivative at Table breakpoints).
  double derivative(double t) const;

  Kind kind() const { return static_cast<Kind>(spec_.index()); }
  const Spec& spec() const { return spec_; }

 private:
  Spec spec_;
  std::vector<double> table_cum_;  // cumulative exact areas per Table breakpoint
};

/// One cache element's optimization problem: Poisson update rate, refresh
/// cost, and the age-related cost function. lambda = 0 is accepted here
/// (evaluation-only paths); the optimizer rejects it.
class Scenario {
 public:
  Scenario(double lambda, double refresh_cost, AgeCost age_cost);

  double lambda() const { return lambda_; }
  double refresh_cost() const { return refresh_cost_; }
  const AgeCost& age_cost() const { return age_cost_; }

 private:
  double lambda_;
  double refresh_cost_;
  AgeCost age_cost_;
};

/// Long-run average cost split into its refresh and age terms.
/// total == refresh_component + age_component, computed in that order.
struct CostReport {
  double total = 0.0;
  double refresh_component = 0.0;
  double age_component = 0.0;
  double interval = 0.0;  // the T (or mean interval) evaluated
};

/// Long-run mean average cost of refreshing every T time units:
/// C(T) = C_r/T + lambda * integral(C_a, 0, T) / T. Requires T > 0.
CostReport long_run_cost(const Scenario& scn, double interval);

}  // namespace freshopt
