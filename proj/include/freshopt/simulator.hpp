#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>

#include "freshopt/cost_model.hpp"
#include "freshopt/random_schedule.hpp"
#include "freshopt/rng.hpp"

namespace freshopt {

struct FixedSchedule {
  double interval;  // T > 0
};
struct RandomSchedule {
  IntervalDistribution dist;
};
using ScheduleSpec = std::variant<FixedSchedule, RandomSchedule>;

struct SimConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_cycles = 1;
  ScheduleSpec schedule{FixedSchedule{1.0}};
};

/// Renewal-reward estimate of the long-run average cost.
/// mean_cost_per_time is the ratio estimator (sum of cycle costs) /
/// (sum of cycle lengths); refresh_component + age_component == mean exactly.
struct SimResult {
  double mean_cost_per_time = 0.0;
  double std_error = 0.0;
  std::uint64_t n_updates_total = 0;
  std::uint64_t n_cycles = 0;
  double refresh_component = 0.0;
  double age_component = 0.0;
};

/// Sum of ages over past updates, Sum_i max(t - S_i, 0). update_times must
/// be sorted ascending and nonnegative; arrivals after t contribute nothing.
double aggregated_age(std::span<const double> update_times, double t);

/// Cycle cost for a known arrival sequence: C_r + Sum_n C_a(len - S_n).
/// Arrivals outside (0, len] are rejected. This is the deterministic core
/// that simulate_cycle feeds with Poisson draws.
double cycle_cost_for_arrivals(const Scenario& scn, double cycle_len,
                               std::span<const double> arrival_times);

struct CycleOutcome {
  double cost = 0.0;
  std::uint64_t n_updates = 0;
};

/// One renewal cycle: N ~ Poisson(lambda * len) arrivals placed uniformly on
/// (0, len] (order-statistics construction), cost C_r + Sum C_a(len - S_n).
CycleOutcome simulate_cycle(const Scenario& scn, double cycle_len,
                            SplitMix64& rng);

/// Monte Carlo estimate over cfg.n_cycles renewal cycles. Every cycle uses
/// its own (seed, cycle index) substream and partial sums are merged in
/// fixed block order, so the result is bit-identical for any thread count.
/// n_threads = 0 means hardware concurrency.
SimResult simulate(const Scenario& scn, const SimConfig& cfg,
                   unsigned n_threads = 0);

struct TraceRow {
  std::uint64_t cycle_index = 0;
  double cycle_len = 0.0;
  std::uint64_t n_updates = 0;
  double cycle_cost = 0.0;
};

/// Single-threaded run that also hands each cycle's row to `sink` in order.
/// Produces the same SimResult as simulate() with the same config.
SimResult simulate_with_trace(const Scenario& scn, const SimConfig& cfg,
                              const std::function<void(const TraceRow&)>& sink);

}  // namespace freshopt
