#include "freshopt/random_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "freshopt/errors.hpp"
#include "freshopt/numerics.hpp"

namespace freshopt {

namespace {

constexpr double kTailCutoff = 1e-15;

// Gamma special functions from boost.math: regularized upper incomplete
// gamma Q(k, x) and its inverses.
double gamma_survival(double shape, double scale, double t) {
  if (t <= 0.0) return 1.0;
  return boost::math::gamma_q(shape, t / scale);
}

}  // namespace

IntervalDistribution::IntervalDistribution(Spec spec) : spec_(std::move(spec)) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          if (!(s.t > 0.0) || !std::isfinite(s.t)) {
            throw std::domain_error("degenerate interval must be positive");
          }
        } else if constexpr (std::is_same_v<S, Uniform>) {
          if (!(s.a > 0.0) || !(s.b > s.a) || !std::isfinite(s.b)) {
            throw std::domain_error("uniform interval requires 0 < a < b");
          }
        } else if constexpr (std::is_same_v<S, Exponential>) {
          if (!(s.mean > 0.0) || !std::isfinite(s.mean)) {
            throw std::domain_error("exponential mean must be positive");
          }
        } else {
          if (!(s.shape > 0.0) || !(s.scale > 0.0) ||
              !std::isfinite(s.shape) || !std::isfinite(s.scale)) {
            throw std::domain_error("gamma shape and scale must be positive");
          }
        }
      },
      spec_);
}

double IntervalDistribution::mean() const {
  return std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          return s.t;
        } else if constexpr (std::is_same_v<S, Uniform>) {
          return 0.5 * (s.a + s.b);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return s.mean;
        } else {
          return s.shape * s.scale;
        }
      },
      spec_);
}

double IntervalDistribution::second_moment() const {
  return std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          return s.t * s.t;
        } else if constexpr (std::is_same_v<S, Uniform>) {
          return (s.a * s.a + s.a * s.b + s.b * s.b) / 3.0;
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return 2.0 * s.mean * s.mean;
        } else {
          return s.scale * s.scale * s.shape * (s.shape + 1.0);
        }
      },
      spec_);
}

double IntervalDistribution::survival(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("survival time must be nonnegative");
  }
  return std::visit(
      [t](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          return t < s.t ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<S, Uniform>) {
          if (t <= s.a) return 1.0;
          if (t >= s.b) return 0.0;
          return (s.b - t) / (s.b - s.a);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return std::exp(-t / s.mean);
        } else {
          return gamma_survival(s.shape, s.scale, t);
        }
      },
      spec_);
}

double IntervalDistribution::inverse_survival(double q) const {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw std::domain_error("survival level must lie in (0, 1)");
  }
  return std::visit(
      [q](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          return s.t;
        } else if constexpr (std::is_same_v<S, Uniform>) {
          return s.b - q * (s.b - s.a);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return -s.mean * std::log(q);
        } else {
          return s.scale * boost::math::gamma_q_inv(s.shape, q);
        }
      },
      spec_);
}

double IntervalDistribution::sample(SplitMix64& rng) const {
  // Clamp away from 0 so the quantile maps into the open support (0, inf);
  // next_double() is already < 1.
  const double u = std::max(rng.next_double(), 0x1p-53);
  return std::visit(
      [u](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Degenerate>) {
          return s.t;
        } else if constexpr (std::is_same_v<S, Uniform>) {
          return s.a + u * (s.b - s.a);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          // 1 - u in (0, 1] keeps log away from 0.
          return -s.mean * std::log1p(-u);
        } else {
          return s.scale * boost::math::gamma_p_inv(s.shape, u);
        }
      },
      spec_);
}

namespace {

// exp-rate of the age cost, or 0 if it grows subexponentially.
double age_growth_rate(const AgeCost& c) {
  if (c.kind() == AgeCost::Kind::Exponential) {
    return std::get<AgeCost::Exponential>(c.spec()).rate;
  }
  return 0.0;
}

// The tail of H_bar decays like exp(-t/s) with s = mean (exponential) or
// s = scale (gamma); exponential age growth at or above that rate makes
// the expected cost infinite. Detected analytically since quadrature
// cannot certify divergence.
void check_convergence(const AgeCost& c, const IntervalDistribution& d) {
  const double b = age_growth_rate(c);
  if (b == 0.0) return;
  double tail_scale = 0.0;
  if (d.kind() == IntervalDistribution::Kind::Exponential) {
    tail_scale = std::get<IntervalDistribution::Exponential>(d.spec()).mean;
  } else if (d.kind() == IntervalDistribution::Kind::Gamma) {
    tail_scale = std::get<IntervalDistribution::Gamma>(d.spec()).scale;
  }
  if (tail_scale > 0.0 && b >= 1.0 / tail_scale) {
    throw NumericError(
        "infinite expected cost: age cost grows at least as fast as the "
        "interval tail decays");
  }
}

// E[Y^q] for real q > 0, closed form per variant.
double moment(const IntervalDistribution& d, double q) {
  return std::visit(
      [q](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IntervalDistribution::Degenerate>) {
          return std::pow(s.t, q);
        } else if constexpr (std::is_same_v<S, IntervalDistribution::Uniform>) {
          return (std::pow(s.b, q + 1.0) - std::pow(s.a, q + 1.0)) /
                 ((s.b - s.a) * (q + 1.0));
        } else if constexpr (std::is_same_v<S,
                                            IntervalDistribution::Exponential>) {
          return std::tgamma(q + 1.0) * std::pow(s.mean, q);
        } else {
          return std::pow(s.scale, q) *
                 std::exp(std::lgamma(s.shape + q) - std::lgamma(s.shape));
        }
      },
      d.spec());
}

// E[e^{bY}]; callers must have run check_convergence first.
double mgf(const IntervalDistribution& d, double b) {
  return std::visit(
      [b](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IntervalDistribution::Degenerate>) {
          return std::exp(b * s.t);
        } else if constexpr (std::is_same_v<S, IntervalDistribution::Uniform>) {
          return (std::exp(b * s.b) - std::exp(b * s.a)) / (b * (s.b - s.a));
        } else if constexpr (std::is_same_v<S,
                                            IntervalDistribution::Exponential>) {
          return 1.0 / (1.0 - b * s.mean);
        } else {
          return std::pow(1.0 - b * s.scale, -s.shape);
        }
      },
      d.spec());
}

// Quadrature fallback (Table age costs): integrand split at the cost's
// breakpoints and the distribution's support kink so the adaptive rule only
// sees smooth pieces. Table costs grow linearly, so cutting the tail where
// H_bar < 1e-15 leaves a negligible remainder.
double age_survival_integral_quadrature(const AgeCost& c,
                                        const IntervalDistribution& d) {
  const double t_max = d.inverse_survival(kTailCutoff);
  std::vector<double> splits{0.0};
  if (c.kind() == AgeCost::Kind::Table) {
    for (const auto& p : std::get<AgeCost::Table>(c.spec()).points) {
      if (p.t > 0.0 && p.t < t_max) splits.push_back(p.t);
    }
  }
  if (d.kind() == IntervalDistribution::Kind::Uniform) {
    const auto& u = std::get<IntervalDistribution::Uniform>(d.spec());
    if (u.a < t_max) splits.push_back(u.a);
  }
  splits.push_back(t_max);
  std::sort(splits.begin(), splits.end());

  const auto integrand = [&](double t) { return c.value(t) * d.survival(t); };
  double total = 0.0;
  for (std::size_t i = 1; i < splits.size(); ++i) {
    total += integrate(integrand, splits[i - 1], splits[i]);
  }
  return total;
}

// integral of C_a(t) * H_bar(t) over (0, inf). Fubini turns it into
// E[integral(C_a, 0, Y)], which is closed-form for every parametric age
// cost: Linear needs E(Y^2), Power needs E(Y^{p+1}), Exponential needs the
// MGF at its growth rate.
double age_survival_integral(const AgeCost& c, const IntervalDistribution& d) {
  check_convergence(c, d);

  if (d.kind() == IntervalDistribution::Kind::Degenerate) {
    return c.integral(std::get<IntervalDistribution::Degenerate>(d.spec()).t);
  }
  switch (c.kind()) {
    case AgeCost::Kind::Linear:
      return std::get<AgeCost::Linear>(c.spec()).slope * 0.5 *
             d.second_moment();
    case AgeCost::Kind::Power: {
      const auto& p = std::get<AgeCost::Power>(c.spec());
      return p.coeff * moment(d, p.exponent + 1.0) / (p.exponent + 1.0);
    }
    case AgeCost::Kind::Exponential: {
      const auto& e = std::get<AgeCost::Exponential>(c.spec());
      return e.scale * ((mgf(d, e.rate) - 1.0) / e.rate - d.mean());
    }
    case AgeCost::Kind::Table:
      return age_survival_integral_quadrature(c, d);
  }
  return age_survival_integral_quadrature(c, d);  // unreachable
}

}  // namespace

CostReport random_schedule_cost(const Scenario& scn,
                                const IntervalDistribution& d) {
  const double mu = d.mean();
  CostReport r;
  r.interval = mu;
  r.refresh_component = scn.refresh_cost() / mu;
  r.age_component =
      scn.lambda() == 0.0
          ? 0.0
          : scn.lambda() * age_survival_integral(scn.age_cost(), d) / mu;
  r.total = r.refresh_component + r.age_component;
  return r;
}

RandomVsFixed compare_random_vs_fixed(const Scenario& scn,
                                      const IntervalDistribution& d) {
  RandomVsFixed out;
  out.random = random_schedule_cost(scn, d);
  out.fixed = long_run_cost(scn, d.mean());
  out.gap = out.random.total - out.fixed.total;
  return out;
}

}  // namespace freshopt
