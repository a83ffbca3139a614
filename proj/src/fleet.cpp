#include "freshopt/fleet.hpp"

#include <cmath>
#include <stdexcept>

namespace freshopt {

namespace {

void validate_records(const std::vector<FleetElement>& records) {
  if (records.empty()) {
    throw std::domain_error("fleet must contain at least one element");
  }
  for (const auto& e : records) {
    if (!(e.lambda >= 0.0) || !std::isfinite(e.lambda)) {
      throw std::domain_error("fleet element rate must be finite and >= 0");
    }
    if (!(e.refresh_cost > 0.0) || !std::isfinite(e.refresh_cost)) {
      throw std::domain_error("fleet element refresh cost must be positive");
    }
  }
}

}  // namespace

FleetSpec FleetSpec::from_elements(std::vector<FleetElement> elements,
                                   double conn_cost) {
  validate_records(elements);
  if (!(conn_cost >= 0.0) || !std::isfinite(conn_cost)) {
    throw std::domain_error("connection cost must be finite and >= 0");
  }
  FleetSpec fs;
  fs.records_ = std::move(elements);
  fs.conn_cost_ = conn_cost;
  return fs;
}

FleetSpec FleetSpec::from_mesh(std::vector<FleetElement> mesh,
                               std::vector<double> weights, double conn_cost) {
  validate_records(mesh);
  if (weights.size() != mesh.size()) {
    throw std::domain_error("mesh needs one weight per node");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) {
      throw std::domain_error("mesh weights must be positive");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("mesh weights must sum to 1");
  }
  if (!(conn_cost >= 0.0) || !std::isfinite(conn_cost)) {
    throw std::domain_error("connection cost must be finite and >= 0");
  }
  FleetSpec fs;
  fs.records_ = std::move(mesh);
  fs.weights_ = std::move(weights);
  fs.is_mesh_ = true;
  fs.conn_cost_ = conn_cost;
  return fs;
}

double averaged_refresh_cost(const FleetSpec& fs) {
  double mean = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    mean += fs.weight(i) * fs.records()[i].refresh_cost;
  }
  return mean;
}

double averaged_age_cost(const FleetSpec& fs, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("age must be nonnegative");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& e = fs.records()[i];
    if (e.lambda > 0.0) mean += fs.weight(i) * e.lambda * e.age_cost.value(t);
  }
  return mean;
}

double averaged_age_integral(const FleetSpec& fs, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("age must be nonnegative");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& e = fs.records()[i];
    if (e.lambda > 0.0) {
      mean += fs.weight(i) * e.lambda * e.age_cost.integral(t);
    }
  }
  return mean;
}

UniformPolicy uniform_policy(const FleetSpec& fs) {
  double active_rate = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    active_rate += fs.weight(i) * fs.records()[i].lambda;
  }
  if (!(active_rate > 0.0)) {
    throw std::domain_error(
        "no finite optimum: averaged age cost is flat (all rates are zero)");
  }

  // The averaged problem has the single-element form with lambda = 1,
  // C_r = avg_Cr and C_a = avg_Ca; each component is strictly increasing
  // and unbounded, so the mixture inherits both conditions.
  const double avg_refresh = averaged_refresh_cost(fs);
  const GenericAgeCost cost{
      [&fs](double t) { return averaged_age_cost(fs, t); },
      [&fs](double t) { return averaged_age_integral(fs, t); }};
  const OptimalPolicy p = optimal_interval_generic(1.0, avg_refresh, cost);

  UniformPolicy out;
  out.t_star = p.t_star;
  const double per_element = p.cost_at_star.total;
  out.total_cost = fs.is_mesh()
                       ? per_element
                       : per_element * static_cast<double>(fs.size());
  return out;
}

ConnectionComparison amortized_connection_comparison(const FleetSpec& fs) {
  ConnectionComparison c;
  c.uniform_per_element = fs.conn_cost() / static_cast<double>(fs.size());
  c.non_uniform_per_element = fs.conn_cost();
  return c;
}

std::vector<OptimalPolicy> per_element_optima(const FleetSpec& fs) {
  std::vector<OptimalPolicy> out;
  out.reserve(fs.size());
  for (const auto& e : fs.records()) {
    out.push_back(
        optimal_interval(Scenario(e.lambda, e.refresh_cost, e.age_cost)));
  }
  return out;
}

}  // namespace freshopt
