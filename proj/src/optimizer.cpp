#include "freshopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freshopt {

namespace {

void require_optimizable(double lambda, double refresh_cost) {
  if (!(lambda > 0.0) || !(refresh_cost > 0.0)) {
    throw std::domain_error(
        "no finite optimum: requires lambda > 0 and refresh cost > 0");
  }
}

double phi_generic(double lambda, double refresh_cost,
                   const GenericAgeCost& cost, double t) {
  return -refresh_cost + lambda * (t * cost.value(t) - cost.integral(t));
}

// Warm start for the upper bracket: pretend the cost is linear with slope
// C_a(1) and take that closed-form optimum. Harmless if wrong.
double bracket_hint(double lambda, double refresh_cost,
                    const GenericAgeCost& cost) {
  const double secant_slope = cost.value(1.0);
  if (std::isfinite(secant_slope) && secant_slope > 0.0) {
    const double hint = std::sqrt(2.0 * refresh_cost / (lambda * secant_slope));
    if (std::isfinite(hint) && hint > 0.0) return hint;
  }
  return 1.0;
}

GenericAgeCost wrap(const AgeCost& age_cost) {
  return GenericAgeCost{
      [&age_cost](double t) { return age_cost.value(t); },
      [&age_cost](double t) { return age_cost.integral(t); }};
}

CostReport report_generic(double lambda, double refresh_cost,
                          const GenericAgeCost& cost, double interval) {
  CostReport r;
  r.interval = interval;
  r.refresh_component = refresh_cost / interval;
  r.age_component = lambda * cost.integral(interval) / interval;
  r.total = r.refresh_component + r.age_component;
  return r;
}

std::vector<std::pair<double, OptimalPolicy>> sweep_impl(
    const Scenario& scn_template, const std::vector<double>& grid,
    bool vary_lambda) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) {
      throw std::domain_error("sweep grid values must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::domain_error("sweep grid must be strictly ascending");
    }
  }
  std::vector<std::pair<double, OptimalPolicy>> out;
  out.reserve(grid.size());
  for (double v : grid) {
    Scenario scn(vary_lambda ? v : scn_template.lambda(),
                 vary_lambda ? scn_template.refresh_cost() : v,
                 scn_template.age_cost());
    out.emplace_back(v, optimal_interval(scn));
  }
  return out;
}

}  // namespace

double phi(const Scenario& scn, double interval) {
  if (!(interval > 0.0) || !std::isfinite(interval)) {
    throw std::domain_error("phi requires a positive finite interval");
  }
  if (!(scn.lambda() > 0.0)) {
    throw std::domain_error("phi requires lambda > 0");
  }
  const auto& c = scn.age_cost();
  return -scn.refresh_cost() +
         scn.lambda() * (interval * c.value(interval) - c.integral(interval));
}

OptimalPolicy optimal_interval_generic(double lambda, double refresh_cost,
                                       const GenericAgeCost& cost,
                                       const RootConfig& cfg) {
  require_optimizable(lambda, refresh_cost);
  // phi(0) = -C_r analytically, so the lower bracket is 0 without ever
  // evaluating there.
  const auto g = [&](double t) {
    return phi_generic(lambda, refresh_cost, cost, t);
  };
  const double hint = bracket_hint(lambda, refresh_cost, cost);
  const double root = find_root_increasing(g, 0.0, hint, cfg);
  OptimalPolicy p;
  p.t_star = root;
  p.cost_at_star = report_generic(lambda, refresh_cost, cost, root);
  p.method = SolveMethod::NumericRoot;
  return p;
}

OptimalPolicy optimal_interval(const Scenario& scn, const RootConfig& cfg) {
  require_optimizable(scn.lambda(), scn.refresh_cost());
  if (scn.age_cost().kind() == AgeCost::Kind::Linear) {
    const double slope = std::get<AgeCost::Linear>(scn.age_cost().spec()).slope;
    OptimalPolicy p;
    p.t_star = closed_form_linear(scn.lambda(), scn.refresh_cost(), slope).first;
    p.cost_at_star = long_run_cost(scn, p.t_star);
    p.method = SolveMethod::ClosedFormLinear;
    return p;
  }
  const GenericAgeCost cost = wrap(scn.age_cost());
  return optimal_interval_generic(scn.lambda(), scn.refresh_cost(), cost, cfg);
}

OptimalPolicy optimal_interval_numeric(const Scenario& scn,
                                       const RootConfig& cfg) {
  const GenericAgeCost cost = wrap(scn.age_cost());
  return optimal_interval_generic(scn.lambda(), scn.refresh_cost(), cost, cfg);
}

std::pair<double, double> closed_form_linear(double lambda, double refresh_cost,
                                             double slope) {
  if (!(lambda > 0.0) || !(refresh_cost > 0.0) || !(slope > 0.0)) {
    throw std::domain_error(
        "closed_form_linear requires positive lambda, refresh cost and slope");
  }
  return {std::sqrt(2.0 * refresh_cost / (lambda * slope)),
          std::sqrt(2.0 * lambda * slope * refresh_cost)};
}

std::vector<std::pair<double, OptimalPolicy>> sweep_lambda(
    const Scenario& scn_template, const std::vector<double>& lambdas) {
  return sweep_impl(scn_template, lambdas, /*vary_lambda=*/true);
}

std::vector<std::pair<double, OptimalPolicy>> sweep_refresh_cost(
    const Scenario& scn_template, const std::vector<double>& costs) {
  return sweep_impl(scn_template, costs, /*vary_lambda=*/false);
}

CostComparison compare_cost_functions(const Scenario& scn1,
                                      const Scenario& scn2,
                                      const RootConfig& cfg) {
  if (scn1.lambda() != scn2.lambda() ||
      scn1.refresh_cost() != scn2.refresh_cost()) {
    throw std::domain_error(
        "cost-function comparison requires equal lambda and refresh cost");
  }
  require_optimizable(scn1.lambda(), scn1.refresh_cost());

  const GenericAgeCost c1 = wrap(scn1.age_cost());
  const GenericAgeCost c2 = wrap(scn2.age_cost());
  const double upper =
      4.0 * std::max(bracket_hint(scn1.lambda(), scn1.refresh_cost(), c1),
                     bracket_hint(scn2.lambda(), scn2.refresh_cost(), c2));

  // Sample Delta(t) = C_a2 - C_a1 on {0} plus 64 geometric points spanning
  // four decades below `upper`; require Delta >= 0 and nondecreasing up to
  // floating-point slack.
  const auto delta = [&](double t) {
    return scn2.age_cost().value(t) - scn1.age_cost().value(t);
  };
  double prev = delta(0.0);
  const double slack = 1e-9 * std::max(1.0, std::abs(delta(upper)));
  if (prev < -slack) {
    throw std::domain_error("cost difference must be nonnegative");
  }
  for (int i = 0; i < 64; ++i) {
    const double t = upper * std::pow(10.0, -4.0 * (63 - i) / 63.0);
    const double d = delta(t);
    if (d < -slack) {
      throw std::domain_error("cost difference must be nonnegative");
    }
    if (d < prev - slack) {
      throw std::domain_error("cost difference must be nondecreasing");
    }
    prev = std::max(prev, d);
  }

  CostComparison cmp;
  cmp.first = optimal_interval(scn1, cfg);
  cmp.second = optimal_interval(scn2, cfg);
  cmp.ordering_holds = cmp.first.t_star >= cmp.second.t_star - 1e-9;
  return cmp;
}

}  // namespace freshopt
