#pragma once

#include <vector>

#include "freshopt/cost_model.hpp"
#include "freshopt/optimizer.hpp"

namespace freshopt {

/// One cached element (or one quadrature node of a rate distribution).
struct FleetElement {
  double lambda;        // update rate, >= 0 (0 allowed on evaluation paths)
  double refresh_cost;  // C_r(lambda_i) > 0
  AgeCost age_cost;     // C_a(t; lambda_i)
};

/// M elements refreshed together under one shared interval, either as an
/// explicit list or as a weighted mesh approximating a continuous rate
/// distribution. conn_cost is the per-refresh connection overhead that the
/// shared schedule amortizes.
class FleetSpec {
 public:
  static FleetSpec from_elements(std::vector<FleetElement> elements,
                                 double conn_cost);
  /// weights must sum to 1 (within 1e-9) and be positive.
  static FleetSpec from_mesh(std::vector<FleetElement> mesh,
                             std::vector<double> weights, double conn_cost);

  const std::vector<FleetElement>& records() const { return records_; }
  /// Per-record averaging weight: 1/M for the discrete form.
  double weight(std::size_t i) const {
    return is_mesh_ ? weights_[i] : 1.0 / static_cast<double>(records_.size());
  }
  bool is_mesh() const { return is_mesh_; }
  double conn_cost() const { return conn_cost_; }
  std::size_t size() const { return records_.size(); }

 private:
  FleetSpec() = default;
  std::vector<FleetElement> records_;
  std::vector<double> weights_;
  bool is_mesh_ = false;
  double conn_cost_ = 0.0;
};

/// Averaged refresh cost: mean of C_r(lambda_i) (weighted for the mesh form).
double averaged_refresh_cost(const FleetSpec& fs);

/// Averaged age cost at age t: mean of lambda_i * C_a(t; lambda_i) — the
/// rate factor sits inside the average.
double averaged_age_cost(const FleetSpec& fs, double t);

/// Exact antiderivative of averaged_age_cost over [0, t].
double averaged_age_integral(const FleetSpec& fs, double t);

struct UniformPolicy {
  double t_star = 0.0;
  /// Fleet cost rate at t_star: M * [avg_Cr/T + integral(avg_Ca)/T] for the
  /// discrete form; the per-element average (M unknown) for the mesh form.
  double total_cost = 0.0;
};

/// Shared optimal interval solving T*avg_Ca(T) - integral(avg_Ca, 0, T) =
/// avg_Cr. Requires a strictly increasing averaged age cost (some record
/// with lambda_i > 0).
UniformPolicy uniform_policy(const FleetSpec& fs);

struct ConnectionComparison {
  double uniform_per_element = 0.0;      // C_conn / M
  double non_uniform_per_element = 0.0;  // C_conn
};

/// Amortized connection cost of refreshing all M elements on one shared
/// connection versus one connection per element.
ConnectionComparison amortized_connection_comparison(const FleetSpec& fs);

/// Each record's own optimal interval, ignoring the shared schedule — the
/// non-uniform side of the comparison report. Requires lambda_i > 0.
std::vector<OptimalPolicy> per_element_optima(const FleetSpec& fs);

}  // namespace freshopt
