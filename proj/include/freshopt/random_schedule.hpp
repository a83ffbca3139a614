#pragma once

#include <variant>

#include "freshopt/cost_model.hpp"
#include "freshopt/rng.hpp"

namespace freshopt {

/// Refresh-interval distribution on (0, inf) with finite mean. Closed family
/// of four variants so every instance has an exact mean, second moment,
/// survival function and inverse survival.
class IntervalDistribution {
 public:
  struct Degenerate {
    double t;  // P(Y = t) = 1, t > 0
  };
  struct Uniform {
    double a, b;  // 0 < a < b; covers U(T - delta, T + delta)
  };
  struct Exponential {
    double mean;  // > 0
  };
  struct Gamma {
    double shape, scale;  // k > 0, theta > 0
  };
  using Spec = std::variant<Degenerate, Uniform, Exponential, Gamma>;

  enum class Kind { Degenerate, Uniform, Exponential, Gamma };

  explicit IntervalDistribution(Spec spec);

  static IntervalDistribution degenerate(double t) {
    return IntervalDistribution(Degenerate{t});
  }
  static IntervalDistribution uniform(double a, double b) {
    return IntervalDistribution(Uniform{a, b});
  }
  static IntervalDistribution exponential(double mean) {
    return IntervalDistribution(Exponential{mean});
  }
  static IntervalDistribution gamma(double shape, double scale) {
    return IntervalDistribution(Gamma{shape, scale});
  }

  /// E(Y), exact per variant.
  double mean() const;

  /// E(Y^2), exact per variant.
  double second_moment() const;

  /// Survival H_bar(t) = 1 - H(t) for t >= 0.
  double survival(double t) const;

  /// Smallest t with survival(t) <= q (used to truncate tail integrals).
  double inverse_survival(double q) const;

  /// Inverse-CDF draw; consumes exactly one uniform from the stream.
  double sample(SplitMix64& rng) const;

  Kind kind() const { return static_cast<Kind>(spec_.index()); }
  const Spec& spec() const { return spec_; }

 private:
  Spec spec_;
};

/// Long-run average cost under iid random refresh intervals Y ~ d:
///   C_H = C_r / E(Y) + lambda * integral(C_a * H_bar, 0, inf) / E(Y).
/// Closed forms are used where they exist (degenerate intervals, linear age
/// costs via E(Y^2)/2, exponential intervals with power/exponential age
/// costs); the rest integrates numerically, truncated where H_bar < 1e-15.
/// Throws NumericError("infinite expected cost") when the tail integral
/// diverges (exponential age growth at or above the interval tail rate).
CostReport random_schedule_cost(const Scenario& scn,
                                const IntervalDistribution& d);

struct RandomVsFixed {
  CostReport random;  // C_H
  CostReport fixed;   // C(E(Y))
  double gap = 0.0;   // C_H - C(E(Y)), >= 0 with equality iff degenerate
};

/// C_H against the fixed schedule with the same mean interval.
RandomVsFixed compare_random_vs_fixed(const Scenario& scn,
                                      const IntervalDistribution& d);

}  // namespace freshopt
