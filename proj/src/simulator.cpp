#include "freshopt/simulator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace freshopt {

namespace {

// Fixed block size decouples the reduction order from the thread count:
// per-block partial sums are always accumulated in cycle order and merged
// in block order.
constexpr std::uint64_t kBlockCycles = 1u << 16;

struct Accum {
  double sum_cost = 0.0;     // Sum xi_k
  double sum_len = 0.0;      // Sum Y_k
  double sum_cost_sq = 0.0;  // Sum xi_k^2
  double sum_len_sq = 0.0;   // Sum Y_k^2
  double sum_cross = 0.0;    // Sum xi_k Y_k
  std::uint64_t updates = 0;

  void add_cycle(double cost, double len, std::uint64_t n_updates) {
    sum_cost += cost;
    sum_len += len;
    sum_cost_sq += cost * cost;
    sum_len_sq += len * len;
    sum_cross += cost * len;
    updates += n_updates;
  }
  void merge(const Accum& other) {
    sum_cost += other.sum_cost;
    sum_len += other.sum_len;
    sum_cost_sq += other.sum_cost_sq;
    sum_len_sq += other.sum_len_sq;
    sum_cross += other.sum_cross;
    updates += other.updates;
  }
};

double draw_cycle_len(const ScheduleSpec& schedule, SplitMix64& rng) {
  if (const auto* fixed = std::get_if<FixedSchedule>(&schedule)) {
    return fixed->interval;
  }
  return std::get<RandomSchedule>(schedule).dist.sample(rng);
}

void run_block(const Scenario& scn, const SimConfig& cfg, std::uint64_t first,
               std::uint64_t last, Accum& acc,
               const std::function<void(const TraceRow&)>* sink) {
  for (std::uint64_t i = first; i < last; ++i) {
    SplitMix64 rng = SplitMix64::substream(cfg.seed, i);
    const double len = draw_cycle_len(cfg.schedule, rng);
    const CycleOutcome c = simulate_cycle(scn, len, rng);
    acc.add_cycle(c.cost, len, c.n_updates);
    if (sink) {
      (*sink)(TraceRow{i, len, c.n_updates, c.cost});
    }
  }
}

SimResult finish(const Scenario& scn, const Accum& acc, std::uint64_t n) {
  SimResult r;
  r.n_cycles = n;
  r.n_updates_total = acc.updates;
  const double nn = static_cast<double>(n);
  const double ratio = acc.sum_cost / acc.sum_len;
  r.mean_cost_per_time = ratio;
  r.refresh_component = nn * scn.refresh_cost() / acc.sum_len;
  r.age_component = r.mean_cost_per_time - r.refresh_component;

  if (n > 1) {
    // Delta-method standard error of the renewal-reward ratio estimator:
    // Var(R) ~= Sum (xi_k - R Y_k)^2 / ((n - 1) n Ybar^2).
    const double resid_sq = acc.sum_cost_sq - 2.0 * ratio * acc.sum_cross +
                            ratio * ratio * acc.sum_len_sq;
    const double mean_len = acc.sum_len / nn;
    const double var =
        std::max(0.0, resid_sq) / ((nn - 1.0) * nn * mean_len * mean_len);
    r.std_error = std::sqrt(std::max(0.0, var));
  }
  return r;
}

void validate(const SimConfig& cfg) {
  if (cfg.n_cycles < 1) {
    throw std::domain_error("simulation needs at least one cycle");
  }
  if (const auto* fixed = std::get_if<FixedSchedule>(&cfg.schedule)) {
    if (!(fixed->interval > 0.0) || !std::isfinite(fixed->interval)) {
      throw std::domain_error("fixed schedule interval must be positive");
    }
  }
}

}  // namespace

double aggregated_age(std::span<const double> update_times, double t) {
  double prev = 0.0;
  double sum = 0.0;
  for (double s : update_times) {
    if (s < prev || !(s >= 0.0)) {
      throw std::domain_error(
          "update times must be sorted ascending and nonnegative");
    }
    prev = s;
    if (s < t) sum += t - s;
  }
  return sum;
}

double cycle_cost_for_arrivals(const Scenario& scn, double cycle_len,
                               std::span<const double> arrival_times) {
  if (!(cycle_len > 0.0)) {
    throw std::domain_error("cycle length must be positive");
  }
  double cost = scn.refresh_cost();
  for (double s : arrival_times) {
    if (!(s > 0.0) || !(s <= cycle_len)) {
      throw std::domain_error("arrivals must lie in (0, cycle_len]");
    }
    cost += scn.age_cost().value(cycle_len - s);
  }
  return cost;
}

CycleOutcome simulate_cycle(const Scenario& scn, double cycle_len,
                            SplitMix64& rng) {
  if (!(cycle_len > 0.0)) {
    throw std::domain_error("cycle length must be positive");
  }
  CycleOutcome out;
  out.n_updates = poisson_draw(scn.lambda() * cycle_len, rng);
  double cost = scn.refresh_cost();
  const AgeCost& age = scn.age_cost();
  for (std::uint64_t k = 0; k < out.n_updates; ++k) {
    // (1 - u) * len lies in (0, len], matching the half-open cycle; the
    // age at the next refresh is len - S = u * len.
    const double age_at_refresh = rng.next_double() * cycle_len;
    cost += age.value(age_at_refresh);
  }
  out.cost = cost;
  return out;
}

SimResult simulate(const Scenario& scn, const SimConfig& cfg,
                   unsigned n_threads) {
  validate(cfg);
  if (n_threads == 0) {
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::uint64_t n_blocks = (cfg.n_cycles + kBlockCycles - 1) / kBlockCycles;

  std::vector<Accum> block_acc(n_blocks);
  if (n_threads == 1 || n_blocks == 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      run_block(scn, cfg, b * kBlockCycles,
                std::min(cfg.n_cycles, (b + 1) * kBlockCycles), block_acc[b],
                nullptr);
    }
  } else {
    std::atomic<std::uint64_t> next_block{0};
    auto worker = [&] {
      for (;;) {
        const std::uint64_t b = next_block.fetch_add(1);
        if (b >= n_blocks) return;
        run_block(scn, cfg, b * kBlockCycles,
                  std::min(cfg.n_cycles, (b + 1) * kBlockCycles), block_acc[b],
                  nullptr);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Accum total;
  for (const Accum& a : block_acc) total.merge(a);
  return finish(scn, total, cfg.n_cycles);
}

SimResult simulate_with_trace(
    const Scenario& scn, const SimConfig& cfg,
    const std::function<void(const TraceRow&)>& sink) {
  validate(cfg);
  const std::uint64_t n_blocks = (cfg.n_cycles + kBlockCycles - 1) / kBlockCycles;
  Accum total;
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    Accum acc;
    run_block(scn, cfg, b * kBlockCycles,
              std::min(cfg.n_cycles, (b + 1) * kBlockCycles), acc, &sink);
    total.merge(acc);
  }
  return finish(scn, total, cfg.n_cycles);
}

}  // namespace freshopt
